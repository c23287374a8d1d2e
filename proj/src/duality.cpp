#include "brokenlines/duality.hpp"

#include <algorithm>
#include <cmath>

#include "brokenlines/random.hpp"

namespace brokenlines {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0 && lambda < 1)) throw Error("lambda must lie in (0,1)");
}

void require_nonneg(double r, double s, double t) {
  if (!(r >= 0 && s >= 0 && t >= 0)) throw Error("operator arguments must be nonnegative");
}

inline double pos(double v) { return v > 0 ? v : 0.0; }

}  // namespace

double q_kernel(int np, int nm, int mp, int mm, double lambda) {
  require_lambda(lambda);
  if (np < 0 || nm < 0 || mp < 0 || mm < 0) throw Error("kernel indices must be nonnegative");
  if (np - nm != mp - mm) return 0.0;
  return std::pow(lambda, np + nm - std::abs(mp - mm)) * (1.0 - lambda * lambda);
}

double check_q_duality(double lambda, int kmax) {
  require_lambda(lambda);
  if (kmax < 0) throw Error("kmax must be nonnegative");
  auto pi = [&](int k) { return (1.0 - lambda) * std::pow(lambda, k); };
  double worst = 0;
  for (int mp = 0; mp <= kmax; ++mp)
    for (int mm = 0; mm <= kmax; ++mm)
      for (int np = 0; np <= kmax; ++np)
        for (int nm = 0; nm <= kmax; ++nm) {
          double lhs = pi(mp) * pi(mm) * q_kernel(np, nm, mp, mm, lambda);
          double rhs = pi(np) * pi(nm) * q_kernel(mm, mp, nm, np, lambda);
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

std::array<double, 3> operator_r(double r, double s, double t) {
  require_nonneg(r, s, t);
  return {t + pos(r - s), t + pos(s - r), std::min(r, s)};
}

std::array<double, 4> operator_t(double r, double s, double t) {
  require_nonneg(r, s, t);
  return {r, s, t + pos(r - s), t + pos(s - r)};
}

const char* to_string(VerdictReason r) {
  switch (r) {
    case VerdictReason::Degenerate: return "degenerate";
    case VerdictReason::ExponentialFamily: return "exponential_family";
    case VerdictReason::GeometricFamily: return "geometric_family";
    case VerdictReason::NotSelfDual: return "not_self_dual";
  }
  return "?";
}

Verdict classify_triple(const Triple& tr) {
  using K = Distribution::Kind;
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
  if (tr.pi3.kind() == K::PointMass) {
    double c = tr.pi3.param();
    auto is_c = [&](const Distribution& d) { return d.kind() == K::PointMass && d.param() == c; };
    bool ok = (is_c(tr.pi1) && tr.pi2.support_min() >= c) ||
              (is_c(tr.pi2) && tr.pi1.support_min() >= c);
    return {ok, VerdictReason::Degenerate};
  }
  if (tr.pi1.kind() == K::Exponential && tr.pi2.kind() == K::Exponential &&
      tr.pi3.kind() == K::Exponential &&
      close(tr.pi3.param(), tr.pi1.param() + tr.pi2.param()))
    return {true, VerdictReason::ExponentialFamily};
  if (tr.pi1.kind() == K::Geometric && tr.pi2.kind() == K::Geometric &&
      tr.pi3.kind() == K::Geometric && close(tr.pi3.param(), tr.pi1.param() * tr.pi2.param()))
    return {true, VerdictReason::GeometricFamily};
  return {false, VerdictReason::NotSelfDual};
}

TestReport check_r_invariance(const Triple& tr, long nsamples, std::uint64_t seed, double alpha) {
  if (nsamples < 2) throw Error("R-invariance needs at least two samples");
  const auto n = static_cast<std::size_t>(nsamples);
  std::array<std::vector<double>, 3> img, fresh;
  for (auto& v : img) v.resize(n);
  for (auto& v : fresh) v.resize(n);
  const std::uint64_t s0 = derive_seed(seed, 0), s1 = derive_seed(seed, 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto idx = static_cast<std::uint32_t>(i);
    Stream a(s0, idx), b(s1, idx);
    double r = tr.pi1.sample(a), s = tr.pi2.sample(a), t = tr.pi3.sample(a);
    auto out = operator_r(r, s, t);
    for (int k = 0; k < 3; ++k) img[k][i] = out[k];
    fresh[0][i] = tr.pi1.sample(b);
    fresh[1][i] = tr.pi2.sample(b);
    fresh[2][i] = tr.pi3.sample(b);
  }
  TestReport rep;
  rep.test = "r_invariance";
  rep.params = {{"triple", tr.to_string()}, {"n", nsamples}, {"seed", seed}, {"alpha", alpha}};
  const double a = alpha / 6.0;
  const char* names[3] = {"r", "s", "t"};
  for (int k = 0; k < 3; ++k)
    rep.add(ks_check(std::string("ks_") + names[k], img[k], fresh[k], a));
  for (int k = 0; k < 3; ++k)
    for (int l = k + 1; l < 3; ++l) {
      std::vector<double> pi(n), pf(n);
      for (std::size_t i = 0; i < n; ++i) {
        pi[i] = img[k][i] * img[l][i];
        pf[i] = fresh[k][i] * fresh[l][i];
      }
      rep.add(z_check(std::string("moment_") + names[k] + names[l], pi, pf, a));
    }
  return rep;
}

SampledInputs sample_inputs(const DomainPtr& d, const Triple& tr, std::uint64_t seed) {
  const Arithmetic mode = tr.integer_valued() ? Arithmetic::Integer : Arithmetic::Float;
  std::vector<double> xi(d->sites().size());
  BoundaryFlow z;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    Site y = d->sites()[k];
    Stream s = site_stream(seed, y.t, y.x, Role::Birth);
    xi[k] = tr.pi3.sample(s);
    if (d->on_side(y, Side::SW)) {
      Stream zs = site_stream(seed, y.t, y.x, Role::ZetaPlus);
      z.zeta_plus[y] = tr.pi1.sample(zs);
    }
    if (d->on_side(y, Side::NW)) {
      Stream zs = site_stream(seed, y.t, y.x, Role::ZetaMinus);
      z.zeta_minus[y] = tr.pi2.sample(zs);
    }
  }
  return {BirthField(d, std::move(xi), mode), std::move(z)};
}

FlowField sample_field(const DomainPtr& d, const Triple& tr, std::uint64_t seed) {
  auto in = sample_inputs(d, tr, seed);
  return field_from_birth(in.xi, in.zeta);
}

Triple chain_triple(double lambda) {
  require_lambda(lambda);
  return {Distribution::geometric(lambda), Distribution::geometric(lambda),
          Distribution::geometric(lambda * lambda)};
}

FlowField evolve_chain(const DomainPtr& d, double lambda, std::uint64_t seed) {
  return sample_field(d, chain_triple(lambda), seed);
}

TestReport burke_exit_test(int n, int m, const Triple& tr, long nsamples, std::uint64_t seed,
                           double alpha) {
  if (!classify_triple(tr).self_dual)
    throw Error("burke test refused: triple " + tr.to_string() + " is not self-dual");
  if (nsamples < 2) throw Error("burke test needs at least two samples");
  auto d = make_domain(Domain::rect(n, m));
  auto ne = d->side_sites(Side::NE), se = d->side_sites(Side::SE);
  const std::size_t vars = ne.size() + se.size();
  std::vector<std::vector<double>> obs(vars, std::vector<double>(static_cast<std::size_t>(nsamples)));
  for (long r = 0; r < nsamples; ++r) {
    auto f = sample_field(d, tr, derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::size_t k = 0;
    for (Site y : ne) obs[k++][static_cast<std::size_t>(r)] = f.mass(incident_edges(y).ne);
    for (Site y : se) obs[k++][static_cast<std::size_t>(r)] = f.mass(incident_edges(y).se);
  }
  TestReport rep;
  rep.test = "burke_exit";
  rep.params = {{"triple", tr.to_string()}, {"N", n},       {"M", m},
                {"n", nsamples},            {"seed", seed}, {"alpha", alpha}};
  const std::size_t nchecks = vars + vars * (vars - 1) / 2;
  const double a = alpha / static_cast<double>(nchecks);
  std::vector<std::string> names;
  for (Site y : ne) names.push_back("eta+" + to_string(y));
  for (Site y : se) names.push_back("eta-" + to_string(y));
  for (std::size_t k = 0; k < vars; ++k)
    rep.add(ks_check("ks_" + names[k], obs[k], k < ne.size() ? tr.pi1 : tr.pi2, a));
  for (std::size_t k = 0; k < vars; ++k)
    for (std::size_t l = k + 1; l < vars; ++l)
      rep.add(correlation_check("corr_" + names[k] + "_" + names[l], obs[k], obs[l], a));
  return rep;
}

Site reverse_site(const Domain& d, Site y) {
  return {d.n() + d.m() - 2 - y.t, y.x + d.n() - d.m()};
}

FlowField time_reverse(const FlowField& f) {
  const Domain& d = f.domain();
  if (!d.is_rect()) throw Error("time reversal is only defined on rectangular domains");
  auto r = make_domain(Domain::rect(d.m(), d.n()));
  std::vector<double> mass(r->edges().size(), 0.0);
  for (std::size_t k = 0; k < d.edges().size(); ++k) {
    EdgeId e = d.edges()[k];
    EdgeId g = edge_between(reverse_site(d, e.base), reverse_site(d, e.head()));
    mass[*r->edge_index(g)] = f.masses()[k];
  }
  return FlowField(r, std::move(mass), f.mode());
}

TestReport consistency_test(int n, int m, SubRect sub, double lambda, long nsamples,
                            std::uint64_t seed, std::optional<double> direct_lambda,
                            double alpha) {
  if (sub.i0 < 0 || sub.j0 < 0 || sub.n < 1 || sub.m < 1 || sub.i0 + sub.n > n ||
      sub.j0 + sub.m > m)
    throw Error("sub-rectangle does not fit inside the domain");
  if (nsamples < 2) throw Error("consistency test needs at least two samples");
  auto big = make_domain(Domain::rect(n, m));
  auto small = make_domain(Domain::rect(sub.n, sub.m));
  const double lam2 = direct_lambda.value_or(lambda);
  const int dt = sub.i0 + sub.j0, dx = sub.j0 - sub.i0;

  // small-domain edge k sits at big-domain edge map[k]
  std::vector<std::size_t> map;
  for (const EdgeId& e : small->edges()) {
    EdgeId g{{e.base.t + dt, e.base.x + dx}, e.slope};
    map.push_back(*big->edge_index(g));
  }
  const std::size_t ne = map.size();
  const auto ns = static_cast<std::size_t>(nsamples);
  std::vector<std::vector<double>> restricted(ne, std::vector<double>(ns)),
      direct(ne, std::vector<double>(ns));
  const std::uint64_t sa = derive_seed(seed, 0xA11), sb = derive_seed(seed, 0xB22);
  for (std::size_t r = 0; r < ns; ++r) {
    auto fb = evolve_chain(big, lambda, derive_seed(sa, r));
    auto fs = evolve_chain(small, lam2, derive_seed(sb, r));
    for (std::size_t k = 0; k < ne; ++k) {
      restricted[k][r] = fb.masses()[map[k]];
      direct[k][r] = fs.masses()[k];
    }
  }

  TestReport rep;
  rep.test = "consistency";
  rep.params = {{"N", n},
                {"M", m},
                {"sub", {{"i0", sub.i0}, {"j0", sub.j0}, {"N", sub.n}, {"M", sub.m}}},
                {"lambda", lambda},
                {"direct_lambda", lam2},
                {"n", nsamples},
                {"seed", seed},
                {"alpha", alpha}};
  const double a = alpha / static_cast<double>(ne + small->sites().size());
  for (std::size_t k = 0; k < ne; ++k)
    rep.add(chi2_check("edge_" + to_string(small->edges()[k]),
                       chi2_homogeneity(restricted[k], direct[k]), a));
  for (const Site& y : small->sites()) {
    auto in = incident_edges(y);
    std::size_t up = *small->edge_index(in.ne), down = *small->edge_index(in.se);
    std::vector<double> pr(ns), pd(ns);
    for (std::size_t r = 0; r < ns; ++r) {
      pr[r] = restricted[up][r] * restricted[down][r];
      pd[r] = direct[up][r] * direct[down][r];
    }
    rep.add(z_check("outflow_product_" + to_string(y), pr, pd, a));
  }
  return rep;
}

}  // namespace brokenlines
