#pragma once

// Monte Carlo estimates of G(N, floor(beta N)) / N and concentration scans.

#include <cstdint>
#include <string>
#include <vector>

#include "brokenlines/distributions.hpp"
#include "json.hpp"

namespace brokenlines {

/// Limit of G(N, floor(beta N)) / N: (1 + sqrt(beta))^2 / alpha for
/// Exp(alpha), (1 + sqrt(beta lambda))^2 / (1 - lambda) - 1 for Geom(lambda).
double lln_target(const Distribution& d, double beta);

/// Boundary parameters that balance the two exit sums: alpha_+ and alpha_-
/// for Exp(alpha), lambda_+ and lambda_- for Geom(lambda).
std::pair<double, double> balanced_boundary(const Distribution& d, double beta);

/// Worker count: `requested` (0 = hardware), capped by BROKENLINES_THREADS.
int worker_threads(int requested = 0);

struct LlnConfig {
  int n = 100;
  double beta = 1.0;
  Distribution dist = Distribution::exponential(1.0);
  int replicas = 20;
  std::uint64_t seed = 1;
  int threads = 0;

  static LlnConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct LlnReport {
  LlnConfig config;
  int m = 0;
  std::vector<double> samples;  // G / N per replica
  double mean = 0;
  double stddev = 0;
  double target = 0;
  double abs_error = 0;
  std::pair<double, double> boundary{0, 0};

  nlohmann::json to_json() const;
  std::string samples_csv() const;
};

/// G / N for one replica; xi drawn at the same stream coordinates as
/// sample_inputs uses for births.
double lln_replica(int n, int m, const Distribution& d, std::uint64_t replica_seed);

LlnReport lln_experiment(const LlnConfig& c);

struct ConcentrationRow {
  int n = 0;
  int exceed = 0;
  int replicas = 0;
  double rate = 0;
  double mean = 0;
};

struct ConcentrationReport {
  std::vector<int> ns;
  double delta = 0;
  double beta = 1;
  Distribution dist = Distribution::exponential(1.0);
  int replicas = 0;
  std::uint64_t seed = 0;
  double target = 0;
  std::vector<ConcentrationRow> rows;
  /// Least-squares slope of log(rate) against N over the positive rates
  /// (NaN with fewer than two).
  double slope = 0;
  bool non_increasing = true;

  nlohmann::json to_json() const;
  std::string rates_csv() const;
};

ConcentrationReport concentration_scan(const std::vector<int>& ns, double delta,
                                       const Distribution& d, double beta, int replicas,
                                       std::uint64_t seed, int threads = 0);

}  // namespace brokenlines
