#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "brokenlines/cli.hpp"
#include "brokenlines/duality.hpp"
#include "brokenlines/experiments.hpp"
#include "brokenlines/io.hpp"
#include "brokenlines/svg.hpp"

namespace py = pybind11;
using namespace brokenlines;

namespace {

using Matrix = std::vector<std::vector<double>>;
using SiteList = std::vector<std::pair<int, int>>;

Arithmetic mode_of(bool integer) { return integer ? Arithmetic::Integer : Arithmetic::Float; }

SiteList sites_of(const std::vector<Site>& v) {
  SiteList out;
  for (const Site& y : v) out.emplace_back(y.t, y.x);
  return out;
}

std::map<Site, double> side_map(const std::map<std::pair<int, int>, double>& m) {
  std::map<Site, double> out;
  for (const auto& [k, v] : m) out[{k.first, k.second}] = v;
  return out;
}

}  // namespace

PYBIND11_MODULE(_brokenlines, m) {
  m.doc() = "Broken-line decomposition of lattice flow fields, last passage percolation, duality checks";

  py::register_exception<Error>(m, "BrokenLinesError", PyExc_ValueError);

  py::class_<Domain, std::shared_ptr<Domain>>(m, "Domain")
      .def_static("rect", &Domain::rect, py::arg("n"), py::arg("m"))
      .def_property_readonly("n", &Domain::n)
      .def_property_readonly("m", &Domain::m)
      .def_property_readonly("sites", [](const Domain& d) { return sites_of(d.sites()); })
      .def_property_readonly("edge_count", [](const Domain& d) { return d.edges().size(); })
      .def("cell_site",
           [](const Domain& d, int i, int j) {
             Site y = d.cell_site(i, j);
             return std::make_pair(y.t, y.x);
           })
      .def("to_json", [](const Domain& d) { return domain_to_json(d).dump(); });

  py::class_<FlowField>(m, "FlowField")
      .def_static("from_json", [](const std::string& s) { return field_from_json(nlohmann::json::parse(s)); })
      .def("to_json", [](const FlowField& f) { return field_to_json(f).dump(); })
      .def_property_readonly("masses", &FlowField::masses)
      .def_property_readonly("integer", [](const FlowField& f) { return f.mode() == Arithmetic::Integer; })
      .def_property_readonly("n", [](const FlowField& f) { return f.domain().n(); })
      .def_property_readonly("m", [](const FlowField& f) { return f.domain().m(); })
      .def("mass",
           [](const FlowField& f, int t, int x, const std::string& slope) {
             if (slope != "up" && slope != "down") throw Error("slope must be 'up' or 'down'");
             return f.mass({{t, x}, slope == "up" ? Slope::Up : Slope::Down});
           })
      .def("total_flow_h", [](const FlowField& f) { return total_flow_h(f); })
      .def("conservation_violations",
           [](const FlowField& f) {
             std::vector<std::tuple<int, int, double>> out;
             for (const auto& v : check_conservation(f)) out.emplace_back(v.site.t, v.site.x, v.residual);
             return out;
           })
      .def("birth_matrix", [](const FlowField& f) { return extract(f).xi.to_matrix(); });

  m.def(
      "field_from_birth",
      [](const Matrix& xi, const std::map<std::pair<int, int>, double>& zeta_plus,
         const std::map<std::pair<int, int>, double>& zeta_minus, bool integer) {
        BoundaryFlow z{side_map(zeta_plus), side_map(zeta_minus)};
        return field_from_birth(BirthField::from_matrix(xi, mode_of(integer)), z);
      },
      py::arg("xi"), py::arg("zeta_plus") = std::map<std::pair<int, int>, double>{},
      py::arg("zeta_minus") = std::map<std::pair<int, int>, double>{}, py::arg("integer") = false,
      "Field built from a birth matrix (rows i, columns j) and optional entering flow keyed by (t, x).");

  m.def(
      "decompose",
      [](const FlowField& f) {
        std::vector<std::pair<double, SiteList>> out;
        for (const auto& l : decompose(f).lines) out.emplace_back(l.weight, sites_of(l.trace.sites()));
        return out;
      },
      "Maximal crossing lines, left to right, as (weight, [(t, x), ...]).");

  m.def(
      "compose",
      [](int n, int mm, const std::vector<std::pair<double, SiteList>>& lines, bool integer) {
        Decomposition d;
        d.mode = mode_of(integer);
        for (const auto& [w, s] : lines) {
          std::vector<Site> v;
          for (const auto& [t, x] : s) v.push_back({t, x});
          d.lines.push_back({BrokenTrace(std::move(v)), w});
        }
        return compose(make_domain(Domain::rect(n, mm)), d);
      },
      py::arg("n"), py::arg("m"), py::arg("lines"), py::arg("integer") = false);

  m.def("brick_json", [](const FlowField& f) { return brick_to_json(brick_diagram(f)).dump(); });

  m.def(
      "lpp",
      [](const Matrix& xi) {
        auto r = lpp_dp(BirthField::from_matrix(xi));
        return std::make_pair(r.value, sites_of(r.path->sites));
      },
      "Last passage value and one optimal path of a birth matrix.");
  m.def("lpp_bruteforce", [](const Matrix& xi) { return lpp_bruteforce(BirthField::from_matrix(xi)); });
  m.def("g_minus_h", [](const Matrix& xi) { return check_g_equals_h(BirthField::from_matrix(xi)); });
  m.def("optimal_path_backward",
        [](const FlowField& f) { return sites_of(optimal_path_backward(f).sites); });

  m.def("q_kernel", &q_kernel);
  m.def("check_q_duality", &check_q_duality, py::arg("lam"), py::arg("kmax"));
  m.def("operator_r", &operator_r);
  m.def("operator_t", &operator_t);
  m.def("classify_triple", [](const std::string& s) {
    auto v = classify_triple(Triple::parse(s));
    return std::make_pair(v.self_dual, std::string(to_string(v.reason)));
  });
  m.def(
      "check_r_invariance",
      [](const std::string& triple, long n, std::uint64_t seed) {
        return check_r_invariance(Triple::parse(triple), n, seed).to_json().dump();
      },
      py::arg("triple"), py::arg("n") = 100000, py::arg("seed") = 1);
  m.def(
      "burke_exit_test",
      [](const std::string& triple, int n, int mm, long samples, std::uint64_t seed) {
        return burke_exit_test(n, mm, Triple::parse(triple), samples, seed).to_json().dump();
      },
      py::arg("triple"), py::arg("n") = 3, py::arg("m") = 3, py::arg("samples") = 10000, py::arg("seed") = 1);
  m.def(
      "sample_field",
      [](int n, int mm, const std::string& triple, std::uint64_t seed) {
        return sample_field(make_domain(Domain::rect(n, mm)), Triple::parse(triple), seed);
      },
      py::arg("n"), py::arg("m"), py::arg("triple"), py::arg("seed") = 1);
  m.def("time_reverse", &time_reverse);

  m.def("lln_target",
        [](const std::string& dist, double beta) { return lln_target(Distribution::parse(dist), beta); });
  m.def(
      "lln_experiment",
      [](int n, double beta, const std::string& dist, int replicas, std::uint64_t seed) {
        LlnConfig c;
        c.n = n;
        c.beta = beta;
        c.dist = Distribution::parse(dist);
        c.replicas = replicas;
        c.seed = seed;
        py::gil_scoped_release nogil;
        return lln_experiment(c).to_json().dump();
      },
      py::arg("n"), py::arg("beta") = 1.0, py::arg("dist") = "exp:1", py::arg("replicas") = 20,
      py::arg("seed") = 1);

  m.def("render_lines_svg", [](const FlowField& f) { return render_lines_svg(f.domain(), decompose(f)); });
  m.def("render_brick_svg", [](const FlowField& f) { return render_brick_svg(brick_diagram(f)); });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return std::make_tuple(code, out.str(), err.str());
  });
}
