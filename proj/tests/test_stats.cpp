#include <cmath>

#include "brokenlines/stats.hpp"
#include "doctest.h"

using namespace brokenlines;

TEST_CASE("quantiles against table values") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
  CHECK(chi2_quantile(0.95, 1) == doctest::Approx(3.841459).epsilon(1e-6));
  CHECK(chi2_quantile(0.99, 10) == doctest::Approx(23.209251).epsilon(1e-6));
}

TEST_CASE("KS critical values") {
  // asymptotic c(0.05) = 1.3581
  CHECK(ks_critical_one(0.05, 100) == doctest::Approx(0.13581).epsilon(1e-3));
  CHECK(ks_critical(0.05, 100, 100) == doctest::Approx(1.3581 * std::sqrt(0.02)).epsilon(1e-3));
}

TEST_CASE("two-sample KS statistic by hand") {
  CHECK(ks_two_sample({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_two_sample({1, 2, 3}, {4, 5, 6}) == 1.0);
  // F_a jumps at 1,2 ; F_b at 1.5,3 -> max gap 0.5 at x in [2,3)
  CHECK(ks_two_sample({1, 2}, {1.5, 3}) == doctest::Approx(0.5));
  // ties across samples are resolved as one step
  CHECK(ks_two_sample({0, 0, 1}, {0, 1, 1}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("one-sample KS by hand") {
  auto u = Distribution::uniform(0, 1);
  CHECK(ks_one_sample({0.5}, u) == doctest::Approx(0.5));
  CHECK(ks_one_sample({0.25, 0.75}, u) == doctest::Approx(0.25));
  // a point mass sample fits its own law exactly
  CHECK(ks_one_sample({2, 2, 2}, Distribution::point_mass(2)) == 0.0);
}

TEST_CASE("chi-square homogeneity and goodness of fit") {
  std::vector<double> a, b;
  for (int k = 0; k < 300; ++k) {
    a.push_back(k % 3);
    b.push_back((k + 1) % 3);
  }
  auto h = chi2_homogeneity(a, b);
  CHECK(h.statistic == doctest::Approx(0.0));
  CHECK(h.df == 2);
  std::vector<double> c(300, 0.0);
  CHECK(chi2_homogeneity(a, c).statistic > 100);

  // near-exact geometric(0.5) frequencies
  std::vector<double> g;
  int n = 1 << 10;
  for (int k = 0; k < 8; ++k)
    for (int r = 0; r < (n >> (k + 1)); ++r) g.push_back(k);
  auto fit = chi2_gof(g, Distribution::geometric(0.5));
  CHECK(fit.statistic < chi2_quantile(0.99, fit.df));
  CHECK(fit.df >= 3);
}

TEST_CASE("moments and correlation") {
  CHECK(mean({1, 2, 3}) == 2.0);
  CHECK(stddev({1, 2, 3}) == doctest::Approx(1.0));
  CHECK(correlation({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
  CHECK(correlation({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
}

TEST_CASE("report aggregates the worst check") {
  TestReport r;
  r.test = "demo";
  r.add({"a", 1.0, 2.0, true});
  r.add({"b", 3.0, 2.0, false});
  CHECK_FALSE(r.pass);
  CHECK(r.statistic == doctest::Approx(1.5));
  auto j = r.to_json();
  CHECK(j["test"] == "demo");
  CHECK(j["pass"] == false);
  CHECK(j["checks"].size() == 2);
  CHECK(j.contains("threshold"));
  CHECK(j.contains("params"));
}
