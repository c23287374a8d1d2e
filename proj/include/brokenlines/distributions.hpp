#pragma once

// The four distribution families used for boundary flows and births.

#include <string>

#include "brokenlines/random.hpp"

namespace brokenlines {

class Distribution {
 public:
  enum class Kind { Exponential, Geometric, PointMass, Uniform };

  static Distribution exponential(double alpha);
  /// P(k) = (1 - lambda) lambda^k on k = 0, 1, ...
  static Distribution geometric(double lambda);
  static Distribution point_mass(double c);
  static Distribution uniform(double a, double b);
  /// "exp:1", "geom:0.5", "point:0", "unif:0:1" (also "uniform:0,1").
  static Distribution parse(const std::string& spec);

  Kind kind() const { return kind_; }
  double param() const { return a_; }  // alpha, lambda, c, or lower end
  double param2() const { return b_; }  // upper end for uniform

  /// Inverse-CDF sample from u in (0, 1].
  double quantile_open0(double u) const;
  double sample(Stream& s) const { return quantile_open0(s.uniform_open0()); }

  double cdf(double x) const;       // P(X <= x)
  double cdf_left(double x) const;  // P(X < x)
  double mean() const;
  double variance() const;
  double support_min() const;
  bool is_discrete() const { return kind_ == Kind::Geometric || kind_ == Kind::PointMass; }
  /// All mass on nonnegative integers.
  bool is_integer_valued() const;

  std::string to_string() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  Distribution(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
  Kind kind_;
  double a_;
  double b_;
};

/// Laws of (zeta+, zeta-, xi).
struct Triple {
  Distribution pi1;
  Distribution pi2;
  Distribution pi3;

  /// Three comma-separated distribution specs.
  static Triple parse(const std::string& spec);
  std::string to_string() const;
  bool integer_valued() const {
    return pi1.is_integer_valued() && pi2.is_integer_valued() && pi3.is_integer_valued();
  }
};

}  // namespace brokenlines
