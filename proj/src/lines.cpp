#include "brokenlines/lines.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace brokenlines {

BrokenTrace::BrokenTrace(std::vector<Site> sites) : sites_(std::move(sites)) {
  if (sites_.size() < 2) throw Error("a broken trace needs at least two sites");
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (!is_lattice_site(sites_[i])) throw Error("trace site " + to_string(sites_[i]) + " is off the lattice");
    if (i == 0) continue;
    const Site& a = sites_[i - 1];
    const Site& b = sites_[i];
    if (b.x != a.x + 1 || std::abs(b.t - a.t) != 1)
      throw Error("trace step " + to_string(a) + " -> " + to_string(b) +
                  " must raise x by 1 and move t by 1");
  }
}

BrokenTrace BrokenTrace::v_shape(const Domain& d, Site apex) {
  if (!d.contains(apex)) throw Error("V apex " + to_string(apex) + " is not in the domain");
  std::vector<Site> left;
  Site y = apex;
  while (d.contains(y)) {
    left.push_back(y);
    y = {y.t + 1, y.x - 1};
  }
  left.push_back(y);
  std::vector<Site> s(left.rbegin(), left.rend());
  y = {apex.t + 1, apex.x + 1};
  while (d.contains(y)) {
    s.push_back(y);
    y = {y.t + 1, y.x + 1};
  }
  s.push_back(y);
  return BrokenTrace(std::move(s));
}

BrokenTrace BrokenTrace::wedge(Site apex) {
  return BrokenTrace({{apex.t + 1, apex.x - 1}, apex, {apex.t + 1, apex.x + 1}});
}

BrokenTrace BrokenTrace::single_edge(EdgeId e) { return BrokenTrace({e.lower(), e.upper()}); }

std::optional<int> BrokenTrace::t_at(int x) const {
  if (sites_.empty() || x < x_min() || x > x_max()) return std::nullopt;
  return sites_[static_cast<std::size_t>(x - x_min())].t;
}

int BrokenTrace::t_min() const {
  int r = std::numeric_limits<int>::max();
  for (const Site& s : sites_) r = std::min(r, s.t);
  return r;
}

int BrokenTrace::t_max() const {
  int r = std::numeric_limits<int>::min();
  for (const Site& s : sites_) r = std::max(r, s.t);
  return r;
}

std::vector<EdgeId> BrokenTrace::edges() const {
  std::vector<EdgeId> out;
  for (std::size_t i = 1; i < sites_.size(); ++i) out.push_back(edge_between(sites_[i - 1], sites_[i]));
  return out;
}

std::vector<Site> BrokenTrace::left_corners() const {
  std::vector<Site> out;
  for (std::size_t i = 1; i + 1 < sites_.size(); ++i)
    if (sites_[i - 1].t == sites_[i].t + 1 && sites_[i + 1].t == sites_[i].t + 1)
      out.push_back(sites_[i]);
  return out;
}

bool within_closure(const Domain& d, const BrokenTrace& l) {
  for (const EdgeId& e : l.edges())
    if (!d.has_edge(e)) return false;
  return true;
}

bool crosses(const Domain& d, const BrokenTrace& l) {
  if (!within_closure(d, l)) return false;
  if (!d.in_outer_ring(l.sites().front()) || !d.in_outer_ring(l.sites().back())) return false;
  for (std::size_t i = 1; i + 1 < l.size(); ++i)
    if (!d.contains(l.sites()[i])) return false;
  return true;
}

bool sub_trace(const BrokenTrace& a, const BrokenTrace& b) {
  if (a.x_min() < b.x_min() || a.x_max() > b.x_max()) return false;
  for (const Site& s : a.sites())
    if (b.t_at(s.x) != s.t) return false;
  return true;
}

const char* to_string(TraceOrder o) {
  switch (o) {
    case TraceOrder::LeftOf: return "left_of";
    case TraceOrder::RightOf: return "right_of";
    case TraceOrder::Equal: return "equal";
    case TraceOrder::Incomparable: return "incomparable";
  }
  return "?";
}

bool right_of(const BrokenTrace& a, const BrokenTrace& b) {
  int lo = std::max(a.x_min(), b.x_min());
  int hi = std::min(a.x_max(), b.x_max());
  for (int x = lo; x <= hi; ++x)
    if (*a.t_at(x) < *b.t_at(x)) return false;
  return a.t_max() >= b.t_min();
}

TraceOrder compare_traces(const BrokenTrace& a, const BrokenTrace& b) {
  bool ab = right_of(a, b);
  bool ba = right_of(b, a);
  if (ab && ba) return TraceOrder::Equal;
  if (ab) return TraceOrder::RightOf;
  if (ba) return TraceOrder::LeftOf;
  return TraceOrder::Incomparable;
}

// ---------------------------------------------------------------------------

std::pair<Site, Site> BrickDiagram::edge_duals(EdgeId e) {
  const Site& b = e.base;
  if (e.slope == Slope::Up) return {{b.t, b.x + 1}, {b.t + 1, b.x}};
  return {{b.t, b.x - 1}, {b.t + 1, b.x}};
}

BrickDiagram::BrickDiagram(const FlowField& f) : domain_(f.domain_ptr()) {
  const Domain& d = *domain_;
  if (!d.is_rect()) throw Error("the brick diagram is only defined on rectangular domains");
  auto bad = check_conservation(f);
  if (!bad.empty())
    throw Error("conservation violated at " + to_string(bad[0].site) + " (residual " +
                std::to_string(bad[0].residual) + ")");

  t_lo_ = d.box_t_min();
  x_lo_ = d.box_x_min();
  height_ = d.box_t_max() - t_lo_ + 1;
  width_ = d.box_x_max() - x_lo_ + 1;
  const std::size_t area = static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
  p_.assign(area, std::numeric_limits<double>::quiet_NaN());
  k_.assign(area, -1);

  // dual graph: one link per edge, late = early + mass
  struct Link {
    std::size_t to;
    double delta;
  };
  std::vector<std::vector<Link>> adj(area);
  const auto& edges = d.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [early, late] = edge_duals(edges[i]);
    double m = f.masses()[i];
    adj[slot(early)].push_back({slot(late), m});
    adj[slot(late)].push_back({slot(early), -m});
  }

  Site start{d.t_min() - 1, d.entry_corner().x};
  std::deque<std::size_t> queue{slot(start)};
  p_[slot(start)] = 0.0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (const Link& l : adj[u])
      if (std::isnan(p_[l.to])) {
        p_[l.to] = p_[u] + l.delta;
        queue.push_back(l.to);
      }
  }

  std::vector<std::pair<double, std::size_t>> vals;
  for (std::size_t s = 0; s < area; ++s)
    if (!std::isnan(p_[s])) vals.emplace_back(p_[s], s);
  std::sort(vals.begin(), vals.end());
  const double top = vals.back().first;
  const double eps =
      f.mode() == Arithmetic::Integer ? 0.0 : 1e-12 * std::max(1.0, std::abs(top));
  int c = -1;
  double prev = 0;
  for (const auto& [v, s] : vals) {
    if (c < 0 || v - prev > eps) {
      ++c;
      q_.push_back(c == 0 ? 0.0 : v);
    }
    prev = v;
    k_[s] = c;
  }
}

std::size_t BrickDiagram::slot(Site d) const {
  if (d.t < t_lo_ || d.t >= t_lo_ + height_ || d.x < x_lo_ || d.x >= x_lo_ + width_)
    throw Error("dual point " + to_string(d) + " lies outside the diagram");
  return static_cast<std::size_t>(d.t - t_lo_) * static_cast<std::size_t>(width_) +
         static_cast<std::size_t>(d.x - x_lo_);
}

bool BrickDiagram::has_dual(Site d) const {
  if (is_lattice_site(d)) return false;
  if (d.t < t_lo_ || d.t >= t_lo_ + height_ || d.x < x_lo_ || d.x >= x_lo_ + width_) return false;
  return k_[slot(d)] >= 0;
}

double BrickDiagram::p(Site d) const {
  if (!has_dual(d)) throw Error("no potential at " + to_string(d));
  return p_[slot(d)];
}

int BrickDiagram::k(Site d) const {
  if (!has_dual(d)) throw Error("no potential at " + to_string(d));
  return k_[slot(d)];
}

std::vector<Site> BrickDiagram::dual_points() const {
  std::vector<Site> out;
  for (int t = t_lo_; t < t_lo_ + height_; ++t)
    for (int x = x_lo_; x < x_lo_ + width_; ++x)
      if (has_dual({t, x})) out.push_back({t, x});
  return out;
}

std::pair<int, int> BrickDiagram::band(Site y) const {
  const Domain& d = *domain_;
  if (d.contains(y)) return {k({y.t - 1, y.x}), k({y.t + 1, y.x})};
  if (d.in_outer_ring(y)) {
    auto [early, late] = edge_duals(d.outer_edge(y));
    return {k(early), k(late)};
  }
  throw Error("site " + to_string(y) + " is outside the domain closure");
}

std::pair<int, int> BrickDiagram::band(const BrokenTrace& l) const {
  if (!within_closure(*domain_, l)) throw Error("trace leaves the domain closure");
  int lo = 0, hi = strip_count();
  for (const Site& y : l.sites()) {
    auto [a, b] = band(y);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  return {lo, hi};
}

std::vector<Site> BrickDiagram::strip_sites(int j) const {
  if (j < 1 || j > strip_count()) throw Error("strip index out of range");
  std::vector<Site> out;
  auto visit = [&](const Site& y) {
    auto [a, b] = band(y);
    if (a < j && j <= b) out.push_back(y);
  };
  for (const Site& y : domain_->sites()) visit(y);
  for (const Site& y : domain_->outer_sites()) visit(y);
  std::sort(out.begin(), out.end(), [](const Site& a, const Site& b) { return a.x < b.x; });
  return out;
}

BrickDiagram brick_diagram(const FlowField& f) { return BrickDiagram(f); }

Decomposition decompose(const FlowField& f) {
  BrickDiagram b(f);
  const Domain& d = f.domain();
  const int m = b.strip_count();
  std::vector<std::vector<Site>> strips(static_cast<std::size_t>(m + 1));
  auto visit = [&](const Site& y) {
    auto [lo, hi] = b.band(y);
    for (int j = lo + 1; j <= hi; ++j) strips[static_cast<std::size_t>(j)].push_back(y);
  };
  for (const Site& y : d.sites()) visit(y);
  for (const Site& y : d.outer_sites()) visit(y);

  Decomposition out;
  out.mode = f.mode();
  const auto& q = b.breakpoints();
  for (int j = 1; j <= m; ++j) {
    auto& s = strips[static_cast<std::size_t>(j)];
    std::sort(s.begin(), s.end(), [](const Site& a, const Site& c) { return a.x < c.x; });
    BrokenTrace tr(std::move(s));
    if (!crosses(d, tr)) throw Error("strip " + std::to_string(j) + " is not a crossing trace");
    out.lines.push_back({std::move(tr), q[static_cast<std::size_t>(j)] - q[static_cast<std::size_t>(j - 1)]});
  }
  return out;
}

FlowField compose(const DomainPtr& domain, const Decomposition& dec) {
  const Domain& d = *domain;
  if (!d.is_rect()) throw Error("compose is only defined on rectangular domains");
  std::vector<double> mass(d.edges().size(), 0.0);
  for (std::size_t j = 0; j < dec.lines.size(); ++j) {
    const auto& [tr, w] = dec.lines[j];
    if (!(w > 0)) throw Error("line " + std::to_string(j + 1) + " has nonpositive weight");
    check_mass(w, dec.mode, "line weight");
    if (!crosses(d, tr)) throw Error("line " + std::to_string(j + 1) + " does not cross the domain");
    if (j > 0 && compare_traces(tr, dec.lines[j - 1].trace) != TraceOrder::RightOf)
      throw Error("lines " + std::to_string(j) + " and " + std::to_string(j + 1) +
                  " are not strictly ordered left to right");
    for (const EdgeId& e : tr.edges()) mass[*d.edge_index(e)] += w;
  }
  return FlowField(domain, std::move(mass), dec.mode);
}

double trace_weight(const BrickDiagram& b, const BrokenTrace& l) {
  auto [lo, hi] = b.band(l);
  if (hi <= lo) return 0.0;
  const auto& q = b.breakpoints();
  return q[static_cast<std::size_t>(hi)] - q[static_cast<std::size_t>(lo)];
}

double trace_weight(const FlowField& f, const BrokenTrace& l) {
  return trace_weight(BrickDiagram(f), l);
}

TranslatedLine translated_line(const BrickDiagram& b, const BrokenTrace& l) {
  auto [lo, hi] = b.band(l);
  const auto& q = b.breakpoints();
  if (hi <= lo) return {l, {0, 0}};
  return {l, {q[static_cast<std::size_t>(lo)], q[static_cast<std::size_t>(hi)]}};
}

BrokenLine maximal_line(const BrickDiagram& b, const BrokenTrace& l) {
  TranslatedLine g = translated_line(b, l);
  BrokenLine out{l, {}, g.j.length()};
  if (out.weight <= 0) {
    out.weight = 0;
    return out;
  }
  for (const EdgeId& e : l.edges()) {
    double base = b.p(BrickDiagram::edge_duals(e).first);
    out.intervals.push_back({g.j.lo - base, g.j.hi - base});
  }
  return out;
}

BrokenLine maximal_line(const FlowField& f, const BrokenTrace& l) {
  return maximal_line(BrickDiagram(f), l);
}

LineFields line_fields(const DomainPtr& domain, const BrokenTrace& l, double w, Arithmetic mode) {
  const Domain& d = *domain;
  check_mass(w, mode, "line weight");
  if (!within_closure(d, l)) throw Error("trace leaves the domain closure");
  std::vector<double> xi(d.sites().size(), 0.0);
  std::vector<double> eta(d.edges().size(), 0.0);
  BoundaryFlow zeta;
  if (w > 0) {
    for (const Site& y : l.left_corners())
      if (auto k = d.site_index(y)) xi[*k] = w;
    for (const EdgeId& e : l.edges()) eta[*d.edge_index(e)] = w;
    const auto& s = l.sites();
    // an entering end is the outer site one step earlier in t than its neighbour
    if (d.in_outer_ring(s.front()) && d.contains(s[1]) && s.front().t == s[1].t - 1)
      zeta.zeta_plus[s[1]] = w;
    const std::size_t n = s.size();
    if (d.in_outer_ring(s[n - 1]) && d.contains(s[n - 2]) && s[n - 1].t == s[n - 2].t - 1)
      zeta.zeta_minus[s[n - 2]] = w;
  }
  return {BirthField(domain, std::move(xi), mode), std::move(zeta),
          FlowField(domain, std::move(eta), mode)};
}

}  // namespace brokenlines
