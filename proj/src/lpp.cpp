#include "brokenlines/lpp.hpp"

#include <algorithm>
#include <cmath>

namespace brokenlines {

LppResult lpp_dp(const BirthField& xi) {
  const Domain& d = xi.domain();
  const int n = d.n(), m = d.m();
  auto mat = xi.to_matrix();
  std::vector<std::vector<double>> g(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m)));
  auto at = [&](int i, int j) -> double& { return g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      double best = 0;
      if (i > 0 && j > 0)
        best = std::max(at(i - 1, j), at(i, j - 1));
      else if (i > 0)
        best = at(i - 1, j);
      else if (j > 0)
        best = at(i, j - 1);
      at(i, j) = mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] + best;
    }
  LppResult r;
  r.value = at(n - 1, m - 1);
  std::vector<Site> rev;
  int i = n - 1, j = m - 1;
  rev.push_back(d.cell_site(i + 1, j + 1));
  while (i > 0 || j > 0) {
    if (i > 0 && (j == 0 || at(i - 1, j) >= at(i, j - 1)))
      --i;
    else
      --j;
    rev.push_back(d.cell_site(i + 1, j + 1));
  }
  r.path = LatticePath{{rev.rbegin(), rev.rend()}};
  return r;
}

double lpp_value(const std::vector<double>& a, int n, int m) {
  if (n < 1 || m < 1 || a.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(m))
    throw Error("matrix shape does not match N x M");
  std::vector<double> row(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < n; ++i) {
    const double* src = a.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(m);
    double left = 0;
    for (int j = 0; j < m; ++j) {
      double v = src[j] + std::max(row[static_cast<std::size_t>(j)], left);
      row[static_cast<std::size_t>(j)] = v;
      left = v;
    }
  }
  return row.back();
}

double lpp_bruteforce(const BirthField& xi) {
  const Domain& d = xi.domain();
  const int n = d.n(), m = d.m();
  if (n + m > 14) throw Error("brute force LPP is limited to N + M <= 14");
  auto mat = xi.to_matrix();
  const int steps = n + m - 2;
  double best = -1;
  // bit k set: step k moves down (i+1), otherwise right (j+1)
  for (unsigned mask = 0; mask < (1u << steps); ++mask) {
    if (__builtin_popcount(mask) != n - 1) continue;
    int i = 0, j = 0;
    double s = mat[0][0];
    for (int k = 0; k < steps; ++k) {
      if (mask & (1u << k))
        ++i;
      else
        ++j;
      s += mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    best = std::max(best, s);
  }
  return best;
}

double check_g_equals_h(const BirthField& xi) {
  double g = lpp_dp(xi).value;
  double h = total_flow_h(field_from_birth(xi));
  return std::abs(g - h);
}

LatticePath optimal_path_backward(const FlowField& f, std::size_t* edge_reads) {
  const Domain& d = f.domain();
  if (!d.is_rect()) throw Error("backward path needs a rectangular domain");
  std::size_t reads = 0;
  auto read = [&](EdgeId e) {
    ++reads;
    return f.mass(e);
  };
  for (const Site& y : d.side_sites(Side::SW))
    if (f.mass(incident_edges(y).sw) != 0) throw Error("backward path needs zero boundary inflow");
  for (const Site& y : d.side_sites(Side::NW))
    if (f.mass(incident_edges(y).nw) != 0) throw Error("backward path needs zero boundary inflow");
  std::vector<Site> rev;
  Site y = d.exit_corner();
  rev.push_back(y);
  while (y.t > 0) {
    auto in = incident_edges(y);
    Site down{y.t - 1, y.x - 1}, up{y.t - 1, y.x + 1};
    Site next = read(in.sw) >= read(in.nw) ? down : up;
    if (!d.contains(next)) next = next == down ? up : down;
    y = next;
    rev.push_back(y);
  }
  if (edge_reads) *edge_reads = reads;
  return {{rev.rbegin(), rev.rend()}};
}

void validate_path(const Domain& d, const LatticePath& p) {
  if (p.sites.empty()) throw Error("empty path");
  for (std::size_t i = 0; i < p.sites.size(); ++i) {
    if (!d.contains(p.sites[i])) throw Error("path site " + to_string(p.sites[i]) + " leaves the domain");
    if (i > 0 && (p.sites[i].t != p.sites[i - 1].t + 1 || std::abs(p.sites[i].x - p.sites[i - 1].x) != 1))
      throw Error("path is not oriented at " + to_string(p.sites[i]));
  }
  if (p.sites.front() != d.entry_corner() || p.sites.back() != d.exit_corner())
    throw Error("path must run from the entry corner to the exit corner");
}

double path_sum(const BirthField& xi, const LatticePath& p) {
  double s = 0;
  for (const Site& y : p.sites) {
    if (!xi.domain().contains(y)) throw Error("path site " + to_string(y) + " leaves the domain");
    s += xi.at(y);
  }
  return s;
}

}  // namespace brokenlines
