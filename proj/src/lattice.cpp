#include "brokenlines/lattice.hpp"

#include <algorithm>
#include <cstdlib>

namespace brokenlines {

std::string to_string(Site y) {
  return "(" + std::to_string(y.t) + "," + std::to_string(y.x) + ")";
}

std::string to_string(EdgeId e) {
  return "<" + to_string(e.base) + (e.slope == Slope::Up ? ",up>" : ",down>");
}

EdgeId edge_between(Site a, Site b) {
  if (a.t > b.t) std::swap(a, b);
  if (b.t != a.t + 1 || std::abs(b.x - a.x) != 1)
    throw Error("sites " + to_string(a) + " and " + to_string(b) + " are not adjacent");
  return {a, b.x > a.x ? Slope::Up : Slope::Down};
}

IncidentEdges incident_edges(Site y) {
  return {{{y.t - 1, y.x - 1}, Slope::Up},
          {{y.t - 1, y.x + 1}, Slope::Down},
          {y, Slope::Up},
          {y, Slope::Down}};
}

Domain Domain::rect(int n, int m) {
  if (n < 1 || m < 1)
    throw Error("rectangular domain needs N >= 1 and M >= 1, got N=" + std::to_string(n) +
                " M=" + std::to_string(m));
  Domain d;
  d.kind_ = DomainKind::Rect;
  d.n_ = n;
  d.m_ = m;
  d.t0_ = 0;
  d.t1_ = n + m - 2;
  d.t01_ = {n - 1, m - 1};
  for (int t = d.t0_; t <= d.t1_; ++t) {
    // lower path runs down to (N-1, -(N-1)) then up; upper path runs up to (M-1, M-1) then down
    d.xminus_.push_back(t <= n - 1 ? -t : t - 2 * (n - 1));
    d.xplus_.push_back(t <= m - 1 ? t : 2 * (m - 1) - t);
  }
  d.build();
  return d;
}

Domain Domain::hex(int t0, int t1, std::array<int, 2> t01, std::vector<int> xminus,
                   std::vector<int> xplus) {
  if (t1 < t0) throw Error("hexagonal domain needs t0 <= t1");
  const auto len = static_cast<std::size_t>(t1 - t0 + 1);
  if (xminus.size() != len || xplus.size() != len)
    throw Error("hexagonal domain: boundary paths must have t1-t0+1 entries");
  for (int k = 0; k < 2; ++k)
    if (t01[k] < t0 || t01[k] > t1) throw Error("hexagonal domain: kink time outside [t0,t1]");
  for (std::size_t i = 0; i < len; ++i) {
    int t = t0 + static_cast<int>(i);
    if (!is_lattice_site({t, xminus[i]}) || !is_lattice_site({t, xplus[i]}))
      throw Error("hexagonal domain: boundary point off the lattice at t=" + std::to_string(t));
    if (xminus[i] > xplus[i])
      throw Error("hexagonal domain: lower path above upper path at t=" + std::to_string(t));
    if (i + 1 < len) {
      int dl = xminus[i + 1] - xminus[i];
      int du = xplus[i + 1] - xplus[i];
      if (dl != (t < t01[0] ? -1 : 1))
        throw Error("hexagonal domain: lower path has wrong slope at t=" + std::to_string(t));
      if (du != (t < t01[1] ? 1 : -1))
        throw Error("hexagonal domain: upper path has wrong slope at t=" + std::to_string(t));
    }
  }
  Domain d;
  d.kind_ = DomainKind::Hex;
  d.t0_ = t0;
  d.t1_ = t1;
  d.t01_ = t01;
  d.xminus_ = std::move(xminus);
  d.xplus_ = std::move(xplus);
  d.build();
  return d;
}

void Domain::build() {
  box_x0_ = *std::min_element(xminus_.begin(), xminus_.end()) - 1;
  box_x1_ = *std::max_element(xplus_.begin(), xplus_.end()) + 1;
  box_w_ = box_x1_ - box_x0_ + 1;
  const auto area = static_cast<std::size_t>(box_t_max() - box_t_min() + 1) *
                    static_cast<std::size_t>(box_w_);
  site_slot_.assign(area, -1);
  edge_slot_.assign(2 * area, -1);

  for (int t = t0_; t <= t1_; ++t)
    for (int x = x_low(t); x <= x_high(t); x += 2) {
      site_slot_[box_offset({t, x})] = static_cast<std::int32_t>(sites_.size());
      sites_.push_back({t, x});
    }

  std::vector<EdgeId> es;
  for (const Site& y : sites_) {
    auto in = incident_edges(y);
    es.insert(es.end(), {in.sw, in.nw, in.ne, in.se});
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  edges_ = std::move(es);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const EdgeId& e = edges_[k];
    edge_slot_[2 * box_offset(e.base) + (e.slope == Slope::Up ? 0 : 1)] =
        static_cast<std::int32_t>(k);
  }

  for (int t = box_t_min(); t <= box_t_max(); ++t)
    for (int x = box_x0_ + ((box_x0_ + t) & 1); x <= box_x1_; x += 2) {
      Site y{t, x};
      if (contains(y)) continue;
      bool adj = contains({t - 1, x - 1}) || contains({t - 1, x + 1}) ||
                 contains({t + 1, x - 1}) || contains({t + 1, x + 1});
      if (adj) outer_.push_back(y);
    }
}

bool Domain::in_box(Site y) const {
  return y.t >= box_t_min() && y.t <= box_t_max() && y.x >= box_x0_ && y.x <= box_x1_;
}

std::size_t Domain::box_offset(Site y) const {
  return static_cast<std::size_t>(y.t - box_t_min()) * static_cast<std::size_t>(box_w_) +
         static_cast<std::size_t>(y.x - box_x0_);
}

void Domain::require_rect(const char* what) const {
  if (!is_rect()) throw Error(std::string(what) + " is only defined for rectangular domains");
}

int Domain::n() const {
  require_rect("N");
  return n_;
}

int Domain::m() const {
  require_rect("M");
  return m_;
}

bool Domain::contains(Site y) const {
  if (!is_lattice_site(y) || y.t < t0_ || y.t > t1_) return false;
  return y.x >= x_low(y.t) && y.x <= x_high(y.t);
}

bool Domain::in_closure(Site y) const {
  if (!is_lattice_site(y)) return false;
  return contains(y) || contains({y.t - 1, y.x - 1}) || contains({y.t - 1, y.x + 1}) ||
         contains({y.t + 1, y.x - 1}) || contains({y.t + 1, y.x + 1});
}

std::optional<std::size_t> Domain::site_index(Site y) const {
  if (!is_lattice_site(y) || !in_box(y)) return std::nullopt;
  auto s = site_slot_[box_offset(y)];
  if (s < 0) return std::nullopt;
  return static_cast<std::size_t>(s);
}

std::optional<std::size_t> Domain::edge_index(EdgeId e) const {
  if (!is_lattice_site(e.base) || !in_box(e.base)) return std::nullopt;
  auto s = edge_slot_[2 * box_offset(e.base) + (e.slope == Slope::Up ? 0 : 1)];
  if (s < 0) return std::nullopt;
  return static_cast<std::size_t>(s);
}

bool Domain::on_side(Site y, Side side) const {
  if (!contains(y)) throw Error("site " + to_string(y) + " is not in the domain");
  switch (side) {
    case Side::SW: return !contains({y.t - 1, y.x - 1});
    case Side::NW: return !contains({y.t - 1, y.x + 1});
    case Side::NE: return !contains({y.t + 1, y.x + 1});
    case Side::SE: return !contains({y.t + 1, y.x - 1});
  }
  return false;
}

std::vector<Site> Domain::side_sites(Side side) const {
  std::vector<Site> out;
  for (const Site& y : sites_)
    if (on_side(y, side)) out.push_back(y);
  return out;
}

Side Domain::outer_side(Site y) const {
  require_rect("outer boundary classification");
  if (!in_outer_ring(y)) throw Error("site " + to_string(y) + " is not on the outer ring");
  if (contains({y.t + 1, y.x - 1})) return Side::NW;
  if (contains({y.t + 1, y.x + 1})) return Side::SW;
  if (contains({y.t - 1, y.x - 1})) return Side::NE;
  return Side::SE;
}

EdgeId Domain::outer_edge(Site y) const {
  if (!in_outer_ring(y)) throw Error("site " + to_string(y) + " is not on the outer ring");
  std::optional<EdgeId> found;
  int count = 0;
  for (Site z : {Site{y.t - 1, y.x - 1}, Site{y.t - 1, y.x + 1}, Site{y.t + 1, y.x - 1},
                 Site{y.t + 1, y.x + 1}}) {
    if (contains(z)) {
      found = edge_between(y, z);
      ++count;
    }
  }
  if (count != 1)
    throw Error("outer site " + to_string(y) + " touches the domain along several edges");
  return *found;
}

Site Domain::cell_site(int i, int j) const {
  require_rect("cell indexing");
  if (i < 1 || i > n_ || j < 1 || j > m_)
    throw Error("cell (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  return {i + j - 2, j - i};
}

std::pair<int, int> Domain::site_cell(Site y) const {
  require_rect("cell indexing");
  if (!contains(y)) throw Error("site " + to_string(y) + " is not in the domain");
  return {(y.t - y.x) / 2 + 1, (y.t + y.x) / 2 + 1};
}

Site Domain::entry_corner() const {
  require_rect("entry corner");
  return {0, 0};
}

Site Domain::exit_corner() const {
  require_rect("exit corner");
  return {n_ + m_ - 2, m_ - n_};
}

bool Domain::same_shape(const Domain& other) const {
  return kind_ == other.kind_ && t0_ == other.t0_ && t1_ == other.t1_ && t01_ == other.t01_ &&
         xminus_ == other.xminus_ && xplus_ == other.xplus_;
}

}  // namespace brokenlines
