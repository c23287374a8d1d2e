#pragma once

// Broken traces, broken lines and the brick-diagram decomposition of a flow
// field into maximal crossing lines.

#include <optional>
#include <utility>
#include <vector>

#include "brokenlines/flow.hpp"

namespace brokenlines {

/// Sites y_0..y_n with x_i = x_{i-1} + 1 and t_i = t_{i-1} +- 1, n >= 1.
class BrokenTrace {
 public:
  BrokenTrace() = default;
  explicit BrokenTrace(std::vector<Site> sites);

  /// V-shaped trace with apex `apex`, running out to the domain closure on
  /// both sides (down-left arm and up-right arm both increase t).
  static BrokenTrace v_shape(const Domain& d, Site apex);
  /// Two-edge wedge (t+1,x-1), (t,x), (t+1,x+1).
  static BrokenTrace wedge(Site apex);
  static BrokenTrace single_edge(EdgeId e);

  const std::vector<Site>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  int x_min() const { return sites_.front().x; }
  int x_max() const { return sites_.back().x; }
  std::optional<int> t_at(int x) const;
  int t_min() const;
  int t_max() const;
  std::vector<EdgeId> edges() const;
  /// Sites whose two trace neighbours are both one step later in t.
  std::vector<Site> left_corners() const;

  friend bool operator==(const BrokenTrace&, const BrokenTrace&) = default;

 private:
  std::vector<Site> sites_;
};

/// Every edge of the trace belongs to E(closure).
bool within_closure(const Domain& d, const BrokenTrace& l);
/// Within the closure, with both endpoints on the outer ring.
bool crosses(const Domain& d, const BrokenTrace& l);

/// `a` is contained in `b`: same t(x) on D(a), and D(a) inside D(b).
bool sub_trace(const BrokenTrace& a, const BrokenTrace& b);

enum class TraceOrder { LeftOf, RightOf, Equal, Incomparable };

const char* to_string(TraceOrder o);

/// a is to the right of b: t_a(x) >= t_b(x) on common x, and
/// t_a(x) >= t_b(x') for some x in D(a), x' in D(b).
bool right_of(const BrokenTrace& a, const BrokenTrace& b);

/// Equal when each is right of the other, RightOf/LeftOf when exactly one
/// holds, Incomparable when neither does.
TraceOrder compare_traces(const BrokenTrace& a, const BrokenTrace& b);

/// Half-open interval (lo, hi].
struct Interval {
  double lo = 0;
  double hi = 0;
  double length() const { return hi > lo ? hi - lo : 0.0; }
};

struct BrokenLine {
  BrokenTrace trace;
  std::vector<Interval> intervals;  // one per edge, empty for the empty line
  double weight = 0;
  bool empty() const { return intervals.empty(); }
};

/// A trace with one interval in the global strip coordinate.
struct TranslatedLine {
  BrokenTrace trace;
  Interval j;
};

struct WeightedTrace {
  BrokenTrace trace;
  double weight = 0;
};

struct Decomposition {
  std::vector<WeightedTrace> lines;  // left to right
  Arithmetic mode = Arithmetic::Float;
};

/// Cumulative potential on dual points (t + x odd) adjacent to E(closure):
/// every edge mass is p(late) - p(early), where late is the dual point one
/// step later in t. Breakpoints are the distinct p values; k is the index of
/// the breakpoint a dual point maps to.
class BrickDiagram {
 public:
  explicit BrickDiagram(const FlowField& f);

  const Domain& domain() const { return *domain_; }
  const std::vector<double>& breakpoints() const { return q_; }
  int strip_count() const { return static_cast<int>(q_.size()) - 1; }

  bool has_dual(Site d) const;
  double p(Site d) const;
  int k(Site d) const;
  /// Dual points carrying a potential, lexicographic.
  std::vector<Site> dual_points() const;

  /// Dual points separated by an edge (earlier t first).
  static std::pair<Site, Site> edge_duals(EdgeId e);

  /// Strip range (k-, k+] of a site of the closure.
  std::pair<int, int> band(Site y) const;
  /// Intersection of the bands along a trace (may be empty).
  std::pair<int, int> band(const BrokenTrace& l) const;

  /// Sites of strip j (1-based), sorted by x.
  std::vector<Site> strip_sites(int j) const;

 private:
  std::size_t slot(Site d) const;

  DomainPtr domain_;
  int t_lo_ = 0, x_lo_ = 0, width_ = 0, height_ = 0;
  std::vector<double> p_;
  std::vector<int> k_;
  std::vector<double> q_;
};

BrickDiagram brick_diagram(const FlowField& f);

Decomposition decompose(const FlowField& f);
FlowField compose(const DomainPtr& domain, const Decomposition& d);

/// Weight of the maximal line with trace `l`; the trace must lie in the closure.
double trace_weight(const FlowField& f, const BrokenTrace& l);
double trace_weight(const BrickDiagram& b, const BrokenTrace& l);

/// Maximal broken line with trace `l` in local per-edge mass labels.
BrokenLine maximal_line(const FlowField& f, const BrokenTrace& l);
BrokenLine maximal_line(const BrickDiagram& b, const BrokenTrace& l);

/// Maximal line in the global strip coordinate.
TranslatedLine translated_line(const BrickDiagram& b, const BrokenTrace& l);

struct LineFields {
  BirthField xi;
  BoundaryFlow zeta;
  FlowField eta;
};

/// Birth, boundary and edge fields carried by a trace with weight w.
LineFields line_fields(const DomainPtr& domain, const BrokenTrace& l, double w,
                       Arithmetic mode = Arithmetic::Float);

}  // namespace brokenlines
