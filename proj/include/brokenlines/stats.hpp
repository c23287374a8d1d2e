#pragma once

// Hypothesis tests used by the statistical checks, and the JSON report
// format they feed.

#include <string>
#include <vector>

#include "brokenlines/distributions.hpp"
#include "json.hpp"

namespace brokenlines {

/// One accept/reject decision. Accepted iff statistic <= critical.
struct Check {
  std::string name;
  double statistic = 0;
  double critical = 0;
  bool pass = true;
  double ratio() const { return critical > 0 ? statistic / critical : (statistic > 0 ? 1e300 : 0); }
};

/// Aggregate of several checks run at a common family-wise level.
struct TestReport {
  std::string test;
  nlohmann::json params = nlohmann::json::object();
  std::vector<Check> checks;
  bool pass = true;
  /// Worst statistic/critical ratio; the report passes iff it is <= 1.
  double statistic = 0;
  double threshold = 1.0;

  void add(Check c);
  nlohmann::json to_json() const;
};

/// Two-sided KS critical value at level alpha, asymptotic form.
double ks_critical(double alpha, double n, double m);
double ks_critical_one(double alpha, double n);

/// Two-sample KS distance, exact under ties.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
/// One-sample KS distance against d (handles atoms through cdf_left).
double ks_one_sample(std::vector<double> a, const Distribution& d);

double normal_quantile(double p);
double chi2_quantile(double p, double df);

struct ChiSquare {
  double statistic = 0;
  int df = 0;
};

/// Homogeneity of two samples of nonnegative integers; adjacent values are
/// pooled until every expected count is at least 5.
ChiSquare chi2_homogeneity(const std::vector<double>& a, const std::vector<double>& b);
/// Goodness of fit of nonnegative integers to a discrete law.
ChiSquare chi2_gof(const std::vector<double>& a, const Distribution& d);

/// |mean difference| / standard error for two independent samples.
double z_two_sample(const std::vector<double>& a, const std::vector<double>& b);
/// Pearson correlation.
double correlation(const std::vector<double>& a, const std::vector<double>& b);

double mean(const std::vector<double>& a);
double stddev(const std::vector<double>& a);

// Check builders at level alpha.
Check ks_check(const std::string& name, const std::vector<double>& a, const std::vector<double>& b,
               double alpha);
Check ks_check(const std::string& name, const std::vector<double>& a, const Distribution& d,
               double alpha);
Check chi2_check(const std::string& name, const ChiSquare& c, double alpha);
Check z_check(const std::string& name, const std::vector<double>& a, const std::vector<double>& b,
              double alpha);
/// Independence via |r| sqrt(n) against the normal quantile.
Check correlation_check(const std::string& name, const std::vector<double>& a,
                        const std::vector<double>& b, double alpha);

}  // namespace brokenlines
