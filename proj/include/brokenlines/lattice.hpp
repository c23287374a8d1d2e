#pragma once

// Geometry of the tilted lattice {(t,x) in Z^2 : t + x even}.
//
// Time t runs horizontally and space x vertically. Every site has four
// diagonal neighbours; an edge joins sites at distance sqrt(2). Domains are
// finite convex regions bounded by vertical and +-45 degree lines: the
// rectangle S(N,M) and the general hexagon.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace brokenlines {

/// Raised on any contract violation (bad shapes, bad input, broken invariants).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Site {
  int t = 0;
  int x = 0;

  friend auto operator<=>(const Site&, const Site&) = default;
};

inline bool is_lattice_site(Site y) { return ((y.t + y.x) & 1) == 0; }

std::string to_string(Site y);

enum class Slope : std::uint8_t { Up, Down };

/// Canonical edge: `base` is the endpoint with the smaller t. Up joins base
/// to (t+1, x+1), Down joins base to (t+1, x-1).
struct EdgeId {
  Site base;
  Slope slope = Slope::Up;

  Site head() const {
    return {base.t + 1, slope == Slope::Up ? base.x + 1 : base.x - 1};
  }
  /// Endpoint with the smaller x.
  Site lower() const { return slope == Slope::Up ? base : head(); }
  /// Endpoint with the larger x.
  Site upper() const { return slope == Slope::Up ? head() : base; }

  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

std::string to_string(EdgeId e);

/// Canonical edge joining two diagonal neighbours; throws if they are not.
EdgeId edge_between(Site a, Site b);

/// The four edges at a site, named by the direction they leave it.
struct IncidentEdges {
  EdgeId sw;  // from (t-1, x-1): carries the ascending inflow
  EdgeId nw;  // from (t-1, x+1): carries the descending inflow
  EdgeId ne;  // to (t+1, x+1): ascending outflow
  EdgeId se;  // to (t+1, x-1): descending outflow
};

IncidentEdges incident_edges(Site y);

/// Sides of a domain. For a site of S the side names the boundary it sits
/// on; for a site of the outer ring (closure minus S) it names the side of S
/// it lies beyond.
///   SW: inflow along the ascending direction enters here (zeta+)
///   NW: inflow along the descending direction enters here (zeta-)
///   NE: ascending outflow leaves here
///   SE: descending outflow leaves here
enum class Side : std::uint8_t { SW, NW, NE, SE };

enum class DomainKind : std::uint8_t { Rect, Hex };

/// Finite hexagonal domain with per-time column ranges. A rectangle is the
/// degenerate hexagon; rectangles additionally carry the (i,j) cell indexing
/// (t - x = 2(i-1), t + x = 2(j-1)).
///
/// Immutable after construction.
class Domain {
 public:
  static Domain rect(int n, int m);

  /// `t01` holds {kink of the lower path, kink of the upper path}.
  static Domain hex(int t0, int t1, std::array<int, 2> t01,
                    std::vector<int> xminus, std::vector<int> xplus);

  DomainKind kind() const { return kind_; }
  bool is_rect() const { return kind_ == DomainKind::Rect; }
  int n() const;  // rect only
  int m() const;  // rect only

  int t_min() const { return t0_; }
  int t_max() const { return t1_; }
  int x_low(int t) const { return xminus_.at(static_cast<std::size_t>(t - t0_)); }
  int x_high(int t) const { return xplus_.at(static_cast<std::size_t>(t - t0_)); }
  int kink_low() const { return t01_[0]; }
  int kink_high() const { return t01_[1]; }
  const std::vector<int>& lower_path() const { return xminus_; }
  const std::vector<int>& upper_path() const { return xplus_; }

  bool contains(Site y) const;
  /// Membership in the closure: S plus all diagonal neighbours of S.
  bool in_closure(Site y) const;
  bool in_outer_ring(Site y) const { return in_closure(y) && !contains(y); }

  /// Sites of S, ordered lexicographically by (t, x).
  const std::vector<Site>& sites() const { return sites_; }
  std::optional<std::size_t> site_index(Site y) const;

  /// Sites of the outer ring, ordered lexicographically.
  const std::vector<Site>& outer_sites() const { return outer_; }

  /// Edges with at least one endpoint in S, ordered by base site then Up
  /// before Down.
  const std::vector<EdgeId>& edges() const { return edges_; }
  std::optional<std::size_t> edge_index(EdgeId e) const;
  bool has_edge(EdgeId e) const { return edge_index(e).has_value(); }

  /// Boundary membership for a site of S (see Side).
  bool on_side(Site y, Side side) const;
  std::vector<Site> side_sites(Side side) const;

  /// Which side of S an outer-ring site lies beyond (rectangles only).
  Side outer_side(Site y) const;

  /// The unique edge joining an outer-ring site to S.
  EdgeId outer_edge(Site y) const;

  // Rectangle cell indexing, 1-based.
  Site cell_site(int i, int j) const;
  std::pair<int, int> site_cell(Site y) const;
  /// Leftmost site (minimal t) and rightmost site (maximal t); rect only.
  Site entry_corner() const;
  Site exit_corner() const;

  /// Bounding box of the closure.
  int box_t_min() const { return t0_ - 1; }
  int box_t_max() const { return t1_ + 1; }
  int box_x_min() const { return box_x0_; }
  int box_x_max() const { return box_x1_; }

  bool same_shape(const Domain& other) const;

 private:
  Domain() = default;
  void build();
  void require_rect(const char* what) const;
  std::size_t box_offset(Site y) const;
  bool in_box(Site y) const;

  DomainKind kind_ = DomainKind::Rect;
  int n_ = 0;
  int m_ = 0;
  int t0_ = 0;
  int t1_ = 0;
  std::array<int, 2> t01_{0, 0};
  std::vector<int> xminus_;
  std::vector<int> xplus_;

  int box_x0_ = 0;
  int box_x1_ = 0;
  int box_w_ = 0;  // number of x values in the box
  std::vector<Site> sites_;
  std::vector<Site> outer_;
  std::vector<EdgeId> edges_;
  std::vector<std::int32_t> site_slot_;  // box offset -> site index or -1
  std::vector<std::int32_t> edge_slot_;  // 2*box offset + slope -> edge index or -1
};

}  // namespace brokenlines
