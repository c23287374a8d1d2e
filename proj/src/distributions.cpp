#include "brokenlines/distributions.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "brokenlines/lattice.hpp"

namespace brokenlines {

Distribution Distribution::exponential(double alpha) {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw Error("exponential rate must be positive");
  return {Kind::Exponential, alpha, 0};
}

Distribution Distribution::geometric(double lambda) {
  if (!(lambda > 0 && lambda < 1)) throw Error("geometric parameter must lie in (0,1)");
  return {Kind::Geometric, lambda, 0};
}

Distribution Distribution::point_mass(double c) {
  if (!(c >= 0) || !std::isfinite(c)) throw Error("point mass must be nonnegative");
  return {Kind::PointMass, c, 0};
}

Distribution Distribution::uniform(double a, double b) {
  if (!(a >= 0 && a < b) || !std::isfinite(b)) throw Error("uniform needs 0 <= a < b");
  return {Kind::Uniform, a, b};
}

namespace {

std::vector<double> parse_numbers(const std::string& s, const std::string& whole) {
  std::vector<double> out;
  std::string tok;
  std::istringstream in(s);
  while (std::getline(in, tok, ':')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw Error("bad number in distribution spec '" + whole + "'");
    }
    if (used != tok.size()) throw Error("bad number in distribution spec '" + whole + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Distribution Distribution::parse(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error("distribution spec '" + spec + "' lacks ':'");
  std::string name = spec.substr(0, colon);
  auto nums = parse_numbers(spec.substr(colon + 1), spec);
  auto want = [&](std::size_t n) {
    if (nums.size() != n) throw Error("distribution spec '" + spec + "' has wrong arity");
  };
  if (name == "exp" || name == "exponential") {
    want(1);
    return exponential(nums[0]);
  }
  if (name == "geom" || name == "geometric") {
    want(1);
    return geometric(nums[0]);
  }
  if (name == "point" || name == "delta" || name == "pointmass") {
    want(1);
    return point_mass(nums[0]);
  }
  if (name == "unif" || name == "uniform" || name == "u") {
    want(2);
    return uniform(nums[0], nums[1]);
  }
  throw Error("unknown distribution '" + name + "'");
}

double Distribution::quantile_open0(double u) const {
  switch (kind_) {
    case Kind::Exponential: return -std::log(u) / a_;
    case Kind::Geometric: return std::floor(std::log(u) / std::log(a_));
    case Kind::PointMass: return a_;
    case Kind::Uniform: return a_ + (b_ - a_) * (1.0 - u);
  }
  return 0;
}

double Distribution::cdf(double x) const {
  switch (kind_) {
    case Kind::Exponential: return x <= 0 ? 0.0 : 1.0 - std::exp(-a_ * x);
    case Kind::Geometric: return x < 0 ? 0.0 : 1.0 - std::pow(a_, std::floor(x) + 1.0);
    case Kind::PointMass: return x >= a_ ? 1.0 : 0.0;
    case Kind::Uniform: return x <= a_ ? 0.0 : x >= b_ ? 1.0 : (x - a_) / (b_ - a_);
  }
  return 0;
}

double Distribution::cdf_left(double x) const {
  switch (kind_) {
    case Kind::Geometric: return x <= 0 ? 0.0 : 1.0 - std::pow(a_, std::ceil(x));
    case Kind::PointMass: return x > a_ ? 1.0 : 0.0;
    default: return cdf(x);
  }
}

double Distribution::mean() const {
  switch (kind_) {
    case Kind::Exponential: return 1.0 / a_;
    case Kind::Geometric: return a_ / (1.0 - a_);
    case Kind::PointMass: return a_;
    case Kind::Uniform: return 0.5 * (a_ + b_);
  }
  return 0;
}

double Distribution::variance() const {
  switch (kind_) {
    case Kind::Exponential: return 1.0 / (a_ * a_);
    case Kind::Geometric: return a_ / ((1.0 - a_) * (1.0 - a_));
    case Kind::PointMass: return 0.0;
    case Kind::Uniform: return (b_ - a_) * (b_ - a_) / 12.0;
  }
  return 0;
}

double Distribution::support_min() const {
  switch (kind_) {
    case Kind::PointMass:
    case Kind::Uniform: return a_;
    default: return 0.0;
  }
}

bool Distribution::is_integer_valued() const {
  if (kind_ == Kind::Geometric) return true;
  if (kind_ == Kind::PointMass) return a_ == std::floor(a_);
  return false;
}

std::string Distribution::to_string() const {
  std::ostringstream o;
  o.precision(17);
  switch (kind_) {
    case Kind::Exponential: o << "exp:" << a_; break;
    case Kind::Geometric: o << "geom:" << a_; break;
    case Kind::PointMass: o << "point:" << a_; break;
    case Kind::Uniform: o << "unif:" << a_ << ":" << b_; break;
  }
  return o.str();
}

Triple Triple::parse(const std::string& spec) {
  std::vector<std::string> parts;
  std::string tok;
  std::istringstream in(spec);
  while (std::getline(in, tok, ',')) parts.push_back(tok);
  // "uniform:0,1" style specs split into extra pieces; glue them back
  std::vector<std::string> glued;
  for (const auto& p : parts) {
    if (!glued.empty() && p.find(':') == std::string::npos)
      glued.back() += ":" + p;
    else
      glued.push_back(p);
  }
  if (glued.size() != 3) throw Error("triple spec '" + spec + "' must list three distributions");
  return {Distribution::parse(glued[0]), Distribution::parse(glued[1]),
          Distribution::parse(glued[2])};
}

std::string Triple::to_string() const {
  return pi1.to_string() + "," + pi2.to_string() + "," + pi3.to_string();
}

}  // namespace brokenlines
