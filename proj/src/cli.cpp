#include "brokenlines/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "brokenlines/duality.hpp"
#include "brokenlines/experiments.hpp"
#include "brokenlines/io.hpp"
#include "brokenlines/svg.hpp"

namespace brokenlines {

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  double tolerance = 1e-9;
};

void add_common(CLI::App* sub, Common& c, std::vector<std::string> formats, std::string def) {
  c.format = def;
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  sub->add_option("--tolerance", c.tolerance, "numeric tolerance")->capture_default_str();
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  void emit(const Common& c, const std::string& text) {
    if (c.out.empty())
      out_ << text;
    else
      write_file(c.out, text);
  }

  void echo(const std::string& cmd, nlohmann::json config) {
    config["command"] = cmd;
    err_ << "# config " << config.dump() << "\n";
  }

  std::ostream& out_;
  std::ostream& err_;
};

DomainPtr load_domain(const std::string& file, int n, int m) {
  if (!file.empty()) return make_domain(domain_from_json(read_json_file(file)));
  if (n < 1 || m < 1) throw Error("give --domain or both --N and --M");
  return make_domain(Domain::rect(n, m));
}

std::string report_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"broken line process toolkit", "brokenlines"};
  app.require_subcommand(1);
  Runner run(out, err);
  int status = kExitOk;

  // sample -----------------------------------------------------------------
  Common sample_c;
  std::string sample_domain, sample_triple;
  int sample_n = 0, sample_m = 0;
  double sample_lambda = 0;
  auto* sample = app.add_subcommand("sample", "sample a flow field");
  add_common(sample, sample_c, {"json", "csv"}, "json");
  sample->add_option("--domain", sample_domain, "domain JSON file");
  sample->add_option("--N", sample_n, "rectangle N");
  sample->add_option("--M", sample_m, "rectangle M");
  auto* o_triple = sample->add_option("--triple", sample_triple, "laws of zeta+, zeta-, xi");
  auto* o_lambda = sample->add_option("--lambda", sample_lambda, "geometric chain parameter");
  o_triple->excludes(o_lambda);
  sample->callback([&] {
    auto d = load_domain(sample_domain, sample_n, sample_m);
    Triple t = sample_triple.empty() ? chain_triple(sample_lambda) : Triple::parse(sample_triple);
    run.echo("sample", {{"domain", domain_to_json(*d)}, {"triple", t.to_string()}, {"seed", sample_c.seed}});
    auto in = sample_inputs(d, t, sample_c.seed);
    if (sample_c.format == "csv") {
      std::ostringstream o;
      write_matrix_csv(o, in.xi.to_matrix());
      run.emit(sample_c, o.str());
    } else {
      run.emit(sample_c, field_to_json(field_from_birth(in.xi, in.zeta)).dump(1) + "\n");
    }
  });

  // decompose --------------------------------------------------------------
  Common dec_c;
  std::string dec_field;
  auto* dec = app.add_subcommand("decompose", "split a field into maximal crossing lines");
  add_common(dec, dec_c, {"csv", "json", "svg"}, "csv");
  dec->add_option("--field", dec_field, "field JSON file")->required();
  dec->callback([&] {
    run.echo("decompose", {{"field", dec_field}, {"format", dec_c.format}});
    auto f = field_from_json(read_json_file(dec_field));
    auto b = brick_diagram(f);
    auto d = decompose(f);
    std::ostringstream o;
    if (dec_c.format == "csv") {
      write_decomposition_csv(o, f.domain(), d);
    } else if (dec_c.format == "svg") {
      o << render_lines_svg(f.domain(), d);
    } else {
      nlohmann::json j;
      j["domain"] = domain_to_json(f.domain());
      j["mode"] = to_string(d.mode);
      auto& ls = j["lines"] = nlohmann::json::array();
      for (std::size_t k = 0; k < d.lines.size(); ++k) {
        auto s = nlohmann::json::array();
        for (const Site& y : d.lines[k].trace.sites()) s.push_back({y.t, y.x});
        ls.push_back({{"j", k + 1}, {"weight", d.lines[k].weight}, {"sites", s}});
      }
      j["brick"] = brick_to_json(b);
      o << j.dump(1) << "\n";
    }
    run.emit(dec_c, o.str());
  });

  // compose ----------------------------------------------------------------
  Common comp_c;
  std::string comp_lines;
  auto* comp = app.add_subcommand("compose", "build the field carried by ordered lines");
  add_common(comp, comp_c, {"json"}, "json");
  comp->add_option("--lines", comp_lines, "decomposition CSV file")->required();
  comp->callback([&] {
    run.echo("compose", {{"lines", comp_lines}});
    std::ifstream in(comp_lines);
    if (!in) throw Error("cannot open '" + comp_lines + "'");
    auto file = read_decomposition_csv(in);
    run.emit(comp_c, field_to_json(compose(file.domain, file.dec)).dump(1) + "\n");
  });

  // lpp --------------------------------------------------------------------
  Common lpp_c;
  std::string lpp_xi;
  auto* lpp = app.add_subcommand("lpp", "last passage value, optimal path, and the G = H check");
  add_common(lpp, lpp_c, {"json", "csv"}, "json");
  lpp->add_option("--xi", lpp_xi, "birth matrix CSV (rows i, columns j)")->required();
  lpp->callback([&] {
    run.echo("lpp", {{"xi", lpp_xi}, {"tolerance", lpp_c.tolerance}});
    std::ifstream in(lpp_xi);
    if (!in) throw Error("cannot open '" + lpp_xi + "'");
    auto xi = BirthField::from_matrix(read_matrix_csv(in));
    auto r = lpp_dp(xi);
    double h = total_flow_h(field_from_birth(xi));
    double residual = std::abs(r.value - h);
    bool ok = residual <= lpp_c.tolerance * std::max(1.0, r.value);
    if (lpp_c.format == "csv") {
      std::ostringstream o;
      o << "value," << format_number(r.value) << "\nstep,t,x\n";
      for (std::size_t k = 0; k < r.path->sites.size(); ++k)
        o << k << "," << r.path->sites[k].t << "," << r.path->sites[k].x << "\n";
      run.emit(lpp_c, o.str());
    } else {
      auto j = lpp_to_json(r);
      j["H"] = h;
      j["residual"] = residual;
      j["pass"] = ok;
      run.emit(lpp_c, j.dump() + "\n");
    }
    if (!ok) status = kExitCheckFailed;
  });

  // path -------------------------------------------------------------------
  Common path_c;
  std::string path_field, path_xi;
  auto* path = app.add_subcommand("path", "optimal path read backward from the flow field");
  add_common(path, path_c, {"json"}, "json");
  auto* o_pf = path->add_option("--field", path_field, "field JSON built with zero boundary flow");
  auto* o_px = path->add_option("--xi", path_xi, "birth matrix CSV");
  o_pf->excludes(o_px);
  path->callback([&] {
    run.echo("path", {{"field", path_field}, {"xi", path_xi}, {"tolerance", path_c.tolerance}});
    std::optional<FlowField> f;
    if (!path_field.empty()) {
      f = field_from_json(read_json_file(path_field));
    } else if (!path_xi.empty()) {
      std::ifstream in(path_xi);
      if (!in) throw Error("cannot open '" + path_xi + "'");
      f = field_from_birth(BirthField::from_matrix(read_matrix_csv(in)));
    } else {
      throw Error("give --field or --xi");
    }
    auto p = optimal_path_backward(*f);
    auto xi = extract(*f).xi;
    double sum = path_sum(xi, p);
    double g = lpp_dp(xi).value;
    bool ok = std::abs(sum - g) <= path_c.tolerance * std::max(1.0, g);
    nlohmann::json j = lpp_to_json({sum, p});
    j["G"] = g;
    j["pass"] = ok;
    run.emit(path_c, j.dump() + "\n");
    if (!ok) status = kExitCheckFailed;
  });

  // duality-check ----------------------------------------------------------
  Common dual_c;
  std::string dual_triple;
  long dual_n = 100000;
  double dual_lambda = 0;
  int dual_kmax = 8;
  auto* dual = app.add_subcommand("duality-check", "R-invariance of a triple, or the kernel duality");
  add_common(dual, dual_c, {"json"}, "json");
  auto* o_dt = dual->add_option("--triple", dual_triple, "e.g. exp:1,exp:2,exp:3");
  dual->add_option("--n", dual_n, "sample size")->capture_default_str();
  auto* o_dl = dual->add_option("--lambda", dual_lambda, "check the kernel duality at this lambda");
  dual->add_option("--kmax", dual_kmax, "index range for the kernel check")->capture_default_str();
  o_dt->excludes(o_dl);
  dual->callback([&] {
    nlohmann::json j;
    bool ok;
    if (!dual_triple.empty()) {
      auto t = Triple::parse(dual_triple);
      run.echo("duality-check", {{"triple", t.to_string()}, {"n", dual_n}, {"seed", dual_c.seed}});
      auto rep = check_r_invariance(t, dual_n, dual_c.seed);
      auto v = classify_triple(t);
      j = rep.to_json();
      j["verdict"] = {{"self_dual", v.self_dual}, {"reason", to_string(v.reason)}};
      ok = rep.pass;
    } else if (dual_lambda > 0) {
      double tol = dual_c.tolerance;
      run.echo("duality-check", {{"lambda", dual_lambda}, {"kmax", dual_kmax}, {"tolerance", tol}});
      double r = check_q_duality(dual_lambda, dual_kmax);
      ok = r <= tol;
      j = {{"test", "q_duality"},
           {"params", {{"lambda", dual_lambda}, {"kmax", dual_kmax}}},
           {"statistic", r},
           {"threshold", tol},
           {"pass", ok}};
    } else {
      throw Error("give --triple or --lambda");
    }
    run.emit(dual_c, report_text(j));
    if (!ok) status = kExitCheckFailed;
  });

  // burke ------------------------------------------------------------------
  Common burke_c;
  std::string burke_triple;
  int burke_n = 3, burke_m = 3;
  long burke_samples = 10000;
  auto* burke = app.add_subcommand("burke", "exit-flow laws of a self-dual triple");
  add_common(burke, burke_c, {"json"}, "json");
  burke->add_option("--triple", burke_triple, "self-dual triple")->required();
  burke->add_option("--N", burke_n)->capture_default_str();
  burke->add_option("--M", burke_m)->capture_default_str();
  burke->add_option("--n", burke_samples, "sample size")->capture_default_str();
  burke->callback([&] {
    auto t = Triple::parse(burke_triple);
    run.echo("burke", {{"triple", t.to_string()}, {"N", burke_n}, {"M", burke_m}, {"n", burke_samples}, {"seed", burke_c.seed}});
    auto rep = burke_exit_test(burke_n, burke_m, t, burke_samples, burke_c.seed);
    run.emit(burke_c, report_text(rep.to_json()));
    if (!rep.pass) status = kExitCheckFailed;
  });

  // consistency ------------------------------------------------------------
  Common cons_c;
  int cons_n = 3, cons_m = 3;
  std::vector<int> cons_sub{0, 0, 2, 3};
  double cons_lambda = 0.5, cons_direct = 0;
  long cons_samples = 10000;
  auto* cons = app.add_subcommand("consistency", "restricted law versus direct law on a sub-rectangle");
  add_common(cons, cons_c, {"json"}, "json");
  cons->add_option("--N", cons_n)->capture_default_str();
  cons->add_option("--M", cons_m)->capture_default_str();
  cons->add_option("--sub", cons_sub, "i0,j0,N',M'")->delimiter(',')->expected(4);
  cons->add_option("--lambda", cons_lambda)->capture_default_str();
  cons->add_option("--direct-lambda", cons_direct, "parameter for the direct sampler");
  cons->add_option("--n", cons_samples, "sample size")->capture_default_str();
  cons->callback([&] {
    SubRect s{cons_sub[0], cons_sub[1], cons_sub[2], cons_sub[3]};
    std::optional<double> dl;
    if (cons_direct > 0) dl = cons_direct;
    run.echo("consistency", {{"N", cons_n}, {"M", cons_m}, {"sub", cons_sub}, {"lambda", cons_lambda},
                             {"direct_lambda", dl.value_or(cons_lambda)}, {"n", cons_samples}, {"seed", cons_c.seed}});
    auto rep = consistency_test(cons_n, cons_m, s, cons_lambda, cons_samples, cons_c.seed, dl);
    run.emit(cons_c, report_text(rep.to_json()));
    if (!rep.pass) status = kExitCheckFailed;
  });

  // lln --------------------------------------------------------------------
  Common lln_c;
  std::string lln_manifest, lln_dist = "exp:1", lln_csv;
  int lln_n = 100, lln_reps = 20, lln_threads = 0;
  double lln_beta = 1.0;
  std::vector<double> lln_bracket;
  auto* lln = app.add_subcommand("lln", "Monte Carlo estimate of G(N, beta N) / N");
  add_common(lln, lln_c, {"json", "csv"}, "json");
  lln->add_option("--manifest", lln_manifest, "experiment manifest JSON");
  lln->add_option("--N", lln_n)->capture_default_str();
  lln->add_option("--beta", lln_beta)->capture_default_str();
  lln->add_option("--dist", lln_dist)->capture_default_str();
  lln->add_option("--replicas", lln_reps)->capture_default_str();
  lln->add_option("--threads", lln_threads, "worker threads (0 = all cores)");
  lln->add_option("--csv", lln_csv, "also write per-replica values here");
  lln->add_option("--bracket", lln_bracket, "lo,hi: exit 2 when the mean falls outside")
      ->delimiter(',')
      ->expected(2);
  lln->callback([&] {
    LlnConfig c;
    if (!lln_manifest.empty()) {
      auto m = read_json_file(lln_manifest);
      c = LlnConfig::from_json(m);
      if (m.contains("bracket")) lln_bracket = m["bracket"].get<std::vector<double>>();
    } else {
      c.n = lln_n;
      c.beta = lln_beta;
      c.dist = Distribution::parse(lln_dist);
      c.replicas = lln_reps;
      c.seed = lln_c.seed;
    }
    c.threads = lln_threads;
    run.echo("lln", c.to_json());
    auto rep = lln_experiment(c);
    auto j = rep.to_json();
    bool ok = true;
    if (lln_bracket.size() == 2) {
      ok = rep.mean >= lln_bracket[0] && rep.mean <= lln_bracket[1];
      j["bracket"] = lln_bracket;
      j["pass"] = ok;
    }
    if (!lln_csv.empty()) write_file(lln_csv, rep.samples_csv());
    run.emit(lln_c, lln_c.format == "csv" ? rep.samples_csv() : report_text(j));
    if (!ok) status = kExitCheckFailed;
  });

  // concentration ----------------------------------------------------------
  Common conc_c;
  std::vector<int> conc_ns{100, 200, 400};
  double conc_delta = 0.5, conc_beta = 1.0;
  std::string conc_dist = "exp:1";
  int conc_reps = 500, conc_threads = 0;
  auto* conc = app.add_subcommand("concentration", "exceedance rates of |G/N - limit| > delta");
  add_common(conc, conc_c, {"json", "csv"}, "json");
  conc->add_option("--Ns", conc_ns)->delimiter(',')->capture_default_str();
  conc->add_option("--delta", conc_delta)->capture_default_str();
  conc->add_option("--beta", conc_beta)->capture_default_str();
  conc->add_option("--dist", conc_dist)->capture_default_str();
  conc->add_option("--replicas", conc_reps)->capture_default_str();
  conc->add_option("--threads", conc_threads, "worker threads (0 = all cores)");
  conc->callback([&] {
    auto d = Distribution::parse(conc_dist);
    run.echo("concentration", {{"Ns", conc_ns}, {"delta", conc_delta}, {"beta", conc_beta},
                               {"dist", d.to_string()}, {"replicas", conc_reps}, {"seed", conc_c.seed}});
    auto rep = concentration_scan(conc_ns, conc_delta, d, conc_beta, conc_reps, conc_c.seed, conc_threads);
    run.emit(conc_c, conc_c.format == "csv" ? rep.rates_csv() : report_text(rep.to_json()));
    if (!rep.non_increasing) status = kExitCheckFailed;
  });

  // render -----------------------------------------------------------------
  Common rend_c;
  std::string rend_field, rend_view = "lines";
  auto* rend = app.add_subcommand("render", "SVG of a field's lines or brick diagram");
  add_common(rend, rend_c, {"svg"}, "svg");
  rend->add_option("--field", rend_field, "field JSON file")->required();
  rend->add_option("--view", rend_view)->check(CLI::IsMember({"lines", "brick"}))->capture_default_str();
  rend->callback([&] {
    run.echo("render", {{"field", rend_field}, {"view", rend_view}});
    auto f = field_from_json(read_json_file(rend_field));
    run.emit(rend_c, rend_view == "brick" ? render_brick_svg(brick_diagram(f))
                                          : render_lines_svg(f.domain(), decompose(f)));
  });

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return status;
}

}  // namespace brokenlines
