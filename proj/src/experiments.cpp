#include "brokenlines/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "brokenlines/io.hpp"
#include "brokenlines/lattice.hpp"
#include "brokenlines/lpp.hpp"
#include "brokenlines/random.hpp"
#include "brokenlines/stats.hpp"

namespace brokenlines {

double lln_target(const Distribution& d, double beta) {
  if (!(beta > 0)) throw Error("beta must be positive");
  switch (d.kind()) {
    case Distribution::Kind::Exponential: {
      double s = 1 + std::sqrt(beta);
      return s * s / d.param();
    }
    case Distribution::Kind::Geometric: {
      double l = d.param();
      double s = 1 + std::sqrt(beta * l);
      return s * s / (1 - l) - 1;
    }
    default: throw Error("no limit constant for " + d.to_string());
  }
}

std::pair<double, double> balanced_boundary(const Distribution& d, double beta) {
  if (!(beta > 0)) throw Error("beta must be positive");
  switch (d.kind()) {
    case Distribution::Kind::Exponential: {
      double a = d.param();
      return {a / (1 + std::sqrt(beta)), a / (1 + 1 / std::sqrt(beta))};
    }
    case Distribution::Kind::Geometric: {
      double l = d.param(), r = std::sqrt(beta * l);
      double lp = (l + r) / (1 + r);
      return {lp, l / lp};
    }
    default: throw Error("no balanced boundary for " + d.to_string());
  }
}

int worker_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("BROKENLINES_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

namespace {

template <class Fn>
void parallel_for(int count, int threads, Fn fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

int rows_for(int n, double beta) {
  int m = static_cast<int>(std::floor(beta * n));
  if (m < 1) throw Error("floor(beta N) must be at least 1");
  return m;
}

}  // namespace

LlnConfig LlnConfig::from_json(const nlohmann::json& j) {
  LlnConfig c;
  c.n = j.at("N").get<int>();
  c.beta = j.value("beta", 1.0);
  c.dist = Distribution::parse(j.at("dist").get<std::string>());
  c.replicas = j.value("replicas", 20);
  c.seed = j.value("seed", std::uint64_t{1});
  c.threads = j.value("threads", 0);
  if (c.n < 1 || c.replicas < 1) throw Error("manifest needs N >= 1 and replicas >= 1");
  if (!(c.beta > 0) || static_cast<int>(std::floor(c.beta * c.n)) < 1)
    throw Error("manifest needs beta > 0 with floor(beta N) >= 1");
  return c;
}

nlohmann::json LlnConfig::to_json() const {
  return {{"N", n}, {"beta", beta}, {"dist", dist.to_string()}, {"replicas", replicas}, {"seed", seed}};
}

double lln_replica(int n, int m, const Distribution& d, std::uint64_t seed) {
  std::vector<double> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) {
      Stream s = site_stream(seed, i + j - 2, j - i, Role::Birth);
      a[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j - 1)] =
          d.sample(s);
    }
  return lpp_value(a, n, m) / n;
}

LlnReport lln_experiment(const LlnConfig& c) {
  if (c.n < 1 || c.replicas < 1) throw Error("LLN needs N >= 1 and replicas >= 1");
  LlnReport r;
  r.config = c;
  r.m = rows_for(c.n, c.beta);
  r.target = lln_target(c.dist, c.beta);
  r.boundary = balanced_boundary(c.dist, c.beta);
  r.samples.assign(static_cast<std::size_t>(c.replicas), 0.0);
  parallel_for(c.replicas, worker_threads(c.threads), [&](int k) {
    r.samples[static_cast<std::size_t>(k)] =
        lln_replica(c.n, r.m, c.dist, derive_seed(c.seed, static_cast<std::uint64_t>(k)));
  });
  r.mean = mean(r.samples);
  r.stddev = stddev(r.samples);
  r.abs_error = std::abs(r.mean - r.target);
  return r;
}

nlohmann::json LlnReport::to_json() const {
  nlohmann::json j;
  j["test"] = "lln";
  j["params"] = config.to_json();
  j["params"]["M"] = m;
  j["mean"] = mean;
  j["stddev"] = stddev;
  j["target"] = target;
  j["abs_error"] = abs_error;
  bool exp = config.dist.kind() == Distribution::Kind::Exponential;
  j[exp ? "alpha_plus" : "lambda_plus"] = boundary.first;
  j[exp ? "alpha_minus" : "lambda_minus"] = boundary.second;
  j["note"] = "finite-N brackets are calibrated by pilot runs, not part of the limit theorem";
  return j;
}

std::string LlnReport::samples_csv() const {
  std::ostringstream o;
  o << "replica,G_over_N\n";
  for (std::size_t k = 0; k < samples.size(); ++k) o << k << "," << format_number(samples[k]) << "\n";
  return o.str();
}

ConcentrationReport concentration_scan(const std::vector<int>& ns, double delta,
                                       const Distribution& d, double beta, int replicas,
                                       std::uint64_t seed, int threads) {
  if (ns.empty()) throw Error("concentration scan needs at least one N");
  if (replicas < 1) throw Error("concentration scan needs replicas >= 1");
  if (!(delta > 0)) throw Error("delta must be positive");
  ConcentrationReport rep;
  rep.ns = ns;
  rep.delta = delta;
  rep.beta = beta;
  rep.dist = d;
  rep.replicas = replicas;
  rep.seed = seed;
  rep.target = lln_target(d, beta);
  const int workers = worker_threads(threads);
  for (int n : ns) {
    if (n < 1) throw Error("N must be positive");
    int m = rows_for(n, beta);
    std::vector<double> g(static_cast<std::size_t>(replicas));
    std::uint64_t base = derive_seed(seed, static_cast<std::uint64_t>(n));
    parallel_for(replicas, workers, [&](int k) {
      g[static_cast<std::size_t>(k)] = lln_replica(n, m, d, derive_seed(base, static_cast<std::uint64_t>(k)));
    });
    ConcentrationRow row{n, 0, replicas, 0, mean(g)};
    for (double v : g)
      if (std::abs(v - rep.target) > delta) ++row.exceed;
    row.rate = static_cast<double>(row.exceed) / replicas;
    rep.rows.push_back(row);
  }
  for (std::size_t k = 1; k < rep.rows.size(); ++k)
    if (rep.rows[k].rate > rep.rows[k - 1].rate) rep.non_increasing = false;
  std::vector<double> xs, ys;
  for (const auto& r : rep.rows)
    if (r.rate > 0) {
      xs.push_back(r.n);
      ys.push_back(std::log(r.rate));
    }
  if (xs.size() >= 2) {
    double mx = mean(xs), my = mean(ys), sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sxy += (xs[k] - mx) * (ys[k] - my);
      sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    rep.slope = sxx > 0 ? sxy / sxx : std::nan("");
  } else {
    rep.slope = std::nan("");
  }
  return rep;
}

nlohmann::json ConcentrationReport::to_json() const {
  nlohmann::json j;
  j["test"] = "concentration";
  j["params"] = {{"Ns", ns},           {"delta", delta}, {"beta", beta},
                 {"dist", dist.to_string()}, {"replicas", replicas}, {"seed", seed}};
  j["target"] = target;
  auto& rs = j["rates"] = nlohmann::json::array();
  for (const auto& r : rows)
    rs.push_back({{"N", r.n}, {"exceed", r.exceed}, {"replicas", r.replicas}, {"rate", r.rate},
                  {"mean", r.mean}});
  if (std::isnan(slope))
    j["log_rate_slope"] = nullptr;
  else
    j["log_rate_slope"] = slope;
  j["non_increasing"] = non_increasing;
  j["pass"] = non_increasing;
  return j;
}

std::string ConcentrationReport::rates_csv() const {
  std::ostringstream o;
  o << "N,rate,exceed,replicas,mean\n";
  for (const auto& r : rows)
    o << r.n << "," << format_number(r.rate) << "," << r.exceed << "," << r.replicas << ","
      << format_number(r.mean) << "\n";
  return o.str();
}

}  // namespace brokenlines
