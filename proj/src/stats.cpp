#include "brokenlines/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "brokenlines/lattice.hpp"

namespace brokenlines {

void TestReport::add(Check c) {
  statistic = std::max(statistic, c.ratio());
  pass = pass && c.pass;
  checks.push_back(std::move(c));
}

nlohmann::json TestReport::to_json() const {
  nlohmann::json j;
  j["test"] = test;
  j["params"] = params;
  j["statistic"] = statistic;
  j["threshold"] = threshold;
  j["pass"] = pass;
  auto& cs = j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    cs.push_back({{"name", c.name}, {"statistic", c.statistic}, {"critical", c.critical},
                  {"pass", c.pass}});
  return j;
}

double ks_critical(double alpha, double n, double m) {
  return std::sqrt(-std::log(alpha / 2) / 2) * std::sqrt((n + m) / (n * m));
}

double ks_critical_one(double alpha, double n) {
  return std::sqrt(-std::log(alpha / 2) / 2) / std::sqrt(n);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error("KS needs two nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_one_sample(std::vector<double> a, const Distribution& dist) {
  if (a.empty()) throw Error("KS needs a nonempty sample");
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0;
  std::size_t i = 0;
  while (i < a.size()) {
    double v = a[i];
    double below = static_cast<double>(i) / n;
    while (i < a.size() && a[i] == v) ++i;
    double upto = static_cast<double>(i) / n;
    d = std::max({d, std::abs(upto - dist.cdf(v)), std::abs(below - dist.cdf_left(v))});
  }
  return d;
}

double normal_quantile(double p) {
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double chi2_quantile(double p, double df) {
  return boost::math::quantile(boost::math::chi_squared_distribution<double>(df), p);
}

namespace {

std::map<long long, double> counts(const std::vector<double>& a) {
  std::map<long long, double> c;
  for (double v : a) {
    if (v < 0 || v != std::floor(v)) throw Error("chi-square needs nonnegative integer samples");
    c[static_cast<long long>(v)] += 1.0;
  }
  return c;
}

// Pool consecutive cells left to right until `ok(cell)` holds; a short tail
// joins the previous cell.
template <class Cell, class Ok, class Merge>
std::vector<Cell> pool(const std::vector<Cell>& raw, Ok ok, Merge merge) {
  std::vector<Cell> out;
  Cell cur{};
  bool open = false;
  for (const Cell& c : raw) {
    cur = open ? merge(cur, c) : c;
    open = true;
    if (ok(cur)) {
      out.push_back(cur);
      open = false;
    }
  }
  if (open) {
    if (out.empty())
      out.push_back(cur);
    else
      out.back() = merge(out.back(), cur);
  }
  return out;
}

}  // namespace

ChiSquare chi2_homogeneity(const std::vector<double>& a, const std::vector<double>& b) {
  auto ca = counts(a), cb = counts(b);
  long long top = 0;
  if (!ca.empty()) top = std::max(top, ca.rbegin()->first);
  if (!cb.empty()) top = std::max(top, cb.rbegin()->first);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double n = na + nb;
  struct Cell {
    double oa, ob;
  };
  std::vector<Cell> raw;
  for (long long k = 0; k <= top; ++k) raw.push_back({ca[k], cb[k]});
  auto ok = [&](const Cell& c) {
    double tot = c.oa + c.ob;
    return tot * na / n >= 5 && tot * nb / n >= 5;
  };
  auto merge = [](Cell x, const Cell& y) { return Cell{x.oa + y.oa, x.ob + y.ob}; };
  auto cells = pool(raw, ok, merge);
  ChiSquare r;
  for (const Cell& c : cells) {
    double tot = c.oa + c.ob;
    double ea = tot * na / n, eb = tot * nb / n;
    if (ea > 0) r.statistic += (c.oa - ea) * (c.oa - ea) / ea;
    if (eb > 0) r.statistic += (c.ob - eb) * (c.ob - eb) / eb;
  }
  r.df = static_cast<int>(cells.size()) - 1;
  return r;
}

ChiSquare chi2_gof(const std::vector<double>& a, const Distribution& d) {
  if (!d.is_integer_valued()) throw Error("chi-square fit needs an integer-valued law");
  auto ca = counts(a);
  const double n = static_cast<double>(a.size());
  long long top = ca.empty() ? 0 : ca.rbegin()->first;
  struct Cell {
    double o, p;
  };
  std::vector<Cell> raw;
  double acc = 0;
  for (long long k = 0; k <= top; ++k) {
    double pk = d.cdf(static_cast<double>(k)) - d.cdf_left(static_cast<double>(k));
    raw.push_back({ca[k], pk});
    acc += pk;
  }
  raw.push_back({0, std::max(0.0, 1.0 - acc)});  // everything above the largest observation
  auto ok = [&](const Cell& c) { return c.p * n >= 5; };
  auto merge = [](Cell x, const Cell& y) { return Cell{x.o + y.o, x.p + y.p}; };
  auto cells = pool(raw, ok, merge);
  ChiSquare r;
  for (const Cell& c : cells) {
    double e = c.p * n;
    if (e > 0) r.statistic += (c.o - e) * (c.o - e) / e;
  }
  r.df = static_cast<int>(cells.size()) - 1;
  return r;
}

double mean(const std::vector<double>& a) {
  if (a.empty()) return 0;
  double s = 0;
  for (double v : a) s += v;
  return s / static_cast<double>(a.size());
}

double stddev(const std::vector<double>& a) {
  if (a.size() < 2) return 0;
  double m = mean(a), s = 0;
  for (double v : a) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(a.size() - 1));
}

double z_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  double va = stddev(a), vb = stddev(b);
  double se = std::sqrt(va * va / static_cast<double>(a.size()) +
                        vb * vb / static_cast<double>(b.size()));
  double diff = std::abs(mean(a) - mean(b));
  if (se == 0) return diff == 0 ? 0.0 : 1e300;
  return diff / se;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw Error("correlation needs paired samples");
  double ma = mean(a), mb = mean(b), sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

Check ks_check(const std::string& name, const std::vector<double>& a, const std::vector<double>& b,
               double alpha) {
  Check c{name, ks_two_sample(a, b),
          ks_critical(alpha, static_cast<double>(a.size()), static_cast<double>(b.size())), true};
  c.pass = c.statistic <= c.critical;
  return c;
}

Check ks_check(const std::string& name, const std::vector<double>& a, const Distribution& d,
               double alpha) {
  Check c{name, ks_one_sample(a, d), ks_critical_one(alpha, static_cast<double>(a.size())), true};
  c.pass = c.statistic <= c.critical;
  return c;
}

Check chi2_check(const std::string& name, const ChiSquare& x, double alpha) {
  Check c{name, x.statistic, x.df > 0 ? chi2_quantile(1 - alpha, x.df) : 0.0, true};
  c.pass = x.df <= 0 || c.statistic <= c.critical;
  if (x.df <= 0) c.statistic = 0;
  return c;
}

Check z_check(const std::string& name, const std::vector<double>& a, const std::vector<double>& b,
              double alpha) {
  Check c{name, z_two_sample(a, b), normal_quantile(1 - alpha / 2), true};
  c.pass = c.statistic <= c.critical;
  return c;
}

Check correlation_check(const std::string& name, const std::vector<double>& a,
                        const std::vector<double>& b, double alpha) {
  double r = correlation(a, b);
  Check c{name, std::abs(r) * std::sqrt(static_cast<double>(a.size())),
          normal_quantile(1 - alpha / 2), true};
  c.pass = c.statistic <= c.critical;
  return c;
}

}  // namespace brokenlines
