#include <cmath>
#include <cstdlib>

#include "brokenlines/experiments.hpp"
#include "brokenlines/lpp.hpp"
#include "brokenlines/random.hpp"
#include "doctest.h"

using namespace brokenlines;

TEST_CASE("limit constants") {
  CHECK(lln_target(Distribution::exponential(1), 1) == doctest::Approx(4.0));
  CHECK(lln_target(Distribution::exponential(2), 4) == doctest::Approx(4.5));
  CHECK(lln_target(Distribution::geometric(0.5), 1) == doctest::Approx(4.8284271247));
  CHECK(lln_target(Distribution::exponential(3), 2) ==
        doctest::Approx(lln_target(Distribution::exponential(1), 2) / 3));
  CHECK_THROWS(lln_target(Distribution::uniform(0, 1), 1));
}

TEST_CASE("balanced boundary parameters") {
  auto e = balanced_boundary(Distribution::exponential(1), 1);
  CHECK(e.first == doctest::Approx(0.5));
  CHECK(e.second == doctest::Approx(0.5));
  auto e4 = balanced_boundary(Distribution::exponential(1), 4);
  CHECK(e4.first + e4.second == doctest::Approx(1.0));  // rates add up to alpha
  auto g = balanced_boundary(Distribution::geometric(0.5), 2);
  CHECK(g.first * g.second == doctest::Approx(0.5));  // parameters multiply to lambda
}

TEST_CASE("replica value matches the dp on the same inputs") {
  auto d = Distribution::exponential(1);
  std::uint64_t s = 77;
  std::vector<double> m(12);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 4; ++j) {
      auto st = site_stream(s, i + j - 2, j - i, Role::Birth);
      m[static_cast<std::size_t>((i - 1) * 4 + (j - 1))] = d.sample(st);
    }
  CHECK(lln_replica(3, 4, d, s) == doctest::Approx(lpp_value(m, 3, 4) / 3));
}

TEST_CASE("single-site experiment averages the law") {
  LlnConfig c;
  c.n = 1;
  c.replicas = 4000;
  c.dist = Distribution::exponential(2);
  auto r = lln_experiment(c);
  CHECK(r.m == 1);
  CHECK(std::abs(r.mean - 0.5) < 0.05);
}

TEST_CASE("experiments are deterministic regardless of threads") {
  LlnConfig c;
  c.n = 30;
  c.replicas = 12;
  c.seed = 9;
  c.threads = 1;
  auto a = lln_experiment(c);
  c.threads = 4;
  auto b = lln_experiment(c);
  CHECK(a.samples == b.samples);
  CHECK(a.mean == b.mean);
  CHECK(a.target == 4.0);
  CHECK(a.abs_error == doctest::Approx(std::abs(a.mean - 4.0)));
  auto j = a.to_json();
  CHECK(j["params"]["M"] == 30);
  CHECK(j.contains("alpha_plus"));
  CHECK(a.samples_csv().rfind("replica,", 0) == 0);
}

TEST_CASE("doubling replicas with split seeds moves the mean a little") {
  LlnConfig c;
  c.n = 40;
  c.replicas = 40;
  c.seed = 1;
  auto a = lln_experiment(c);
  c.seed = 2;
  auto b = lln_experiment(c);
  double pooled = (a.mean + b.mean) / 2;
  CHECK(std::abs(pooled - a.mean) < 3 * a.stddev / std::sqrt(40.0));
}

TEST_CASE("transposed rectangles have the same law") {
  LlnConfig c;
  c.n = 20;
  c.beta = 2;
  c.replicas = 200;
  auto wide = lln_experiment(c);
  c.n = 40;
  c.beta = 0.5;
  c.seed = 5;
  auto tall = lln_experiment(c);
  // G(20,40)/20 versus G(40,20)/40: rescale the second to the first
  double a = wide.mean, b = tall.mean * 2;
  double se = std::sqrt(wide.stddev * wide.stddev + 4 * tall.stddev * tall.stddev) / std::sqrt(200.0);
  CHECK(std::abs(a - b) < 4 * se);
}

TEST_CASE("config json") {
  auto c = LlnConfig::from_json(nlohmann::json::parse(
      R"({"N": 50, "beta": 2, "dist": "geom:0.5", "replicas": 3, "seed": 4})"));
  CHECK(c.n == 50);
  CHECK(c.dist == Distribution::geometric(0.5));
  CHECK(LlnConfig::from_json(c.to_json()).seed == 4);
  CHECK_THROWS(LlnConfig::from_json(nlohmann::json::parse(R"({"N": 0})")));
  CHECK_THROWS(LlnConfig::from_json(nlohmann::json::parse(R"({"N": 5, "beta": 0.01})")));
}

TEST_CASE("concentration scan bookkeeping") {
  auto r = concentration_scan({5}, 0.5, Distribution::exponential(1), 1, 1, 3, 1);
  REQUIRE(r.rows.size() == 1);
  CHECK((r.rows[0].rate == 0.0 || r.rows[0].rate == 1.0));
  auto big = concentration_scan({10, 20}, 10.0, Distribution::exponential(1), 1, 50, 3);
  for (const auto& row : big.rows) CHECK(row.rate == 0.0);
  CHECK(big.non_increasing);
  CHECK(big.rates_csv().rfind("N,rate", 0) == 0);
}

TEST_CASE("thread cap from the environment") {
  setenv("BROKENLINES_THREADS", "2", 1);
  CHECK(worker_threads(0) <= 2);
  CHECK(worker_threads(8) <= 2);
  unsetenv("BROKENLINES_THREADS");
  CHECK(worker_threads(3) == 3);
}
