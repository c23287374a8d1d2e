#pragma once

// Maximal broken line computed directly from the four association rules,
// without the brick diagram: push (0, eta(e_1)] forward through the sites of
// the trace, then pull the surviving interval back.

#include <algorithm>
#include <vector>

#include "brokenlines/lines.hpp"

namespace oracle {

using namespace brokenlines;

struct Step {
  double keep_lo, keep_hi;  // admissible labels on the incoming edge
  double shift;             // outgoing label = incoming label + shift
};

inline Step association_step(const FlowField& f, Site y, Site prev, Site next) {
  auto in = incident_edges(y);
  double sw = f.mass(in.sw), nw = f.mass(in.nw), ne = f.mass(in.ne), se = f.mass(in.se);
  bool from_sw = prev.t == y.t - 1;  // otherwise from the se edge
  bool to_nw = next.t == y.t - 1;    // otherwise to the ne edge
  if (from_sw && to_nw) return {0, std::min(sw, nw), 0};
  if (!from_sw && to_nw) return {0, nw - sw, sw};
  if (from_sw && !to_nw) return {nw, sw, -nw};
  double xi = std::min(ne, se);
  return {se - xi, se, ne - se};
}

inline Interval clip(Interval a, double lo, double hi) {
  return {std::max(a.lo, lo), std::min(a.hi, hi)};
}

/// Per-edge intervals of the maximal line; all empty when the weight is 0.
inline std::vector<Interval> maximal_intervals(const FlowField& f, const BrokenTrace& l) {
  const auto& s = l.sites();
  auto edges = l.edges();
  const std::size_t n = edges.size();
  std::vector<Interval> fwd(n);
  std::vector<Step> steps;
  fwd[0] = {0, f.mass(edges[0])};
  for (std::size_t i = 1; i < n; ++i) {
    Step st = association_step(f, s[i], s[i - 1], s[i + 1]);
    steps.push_back(st);
    Interval kept = clip(fwd[i - 1], st.keep_lo, st.keep_hi);
    fwd[i] = clip({kept.lo + st.shift, kept.hi + st.shift}, 0, f.mass(edges[i]));
  }
  if (fwd[n - 1].length() <= 0) return {};
  std::vector<Interval> out(n);
  out[n - 1] = fwd[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    const Step& st = steps[i];
    out[i] = clip({out[i + 1].lo - st.shift, out[i + 1].hi - st.shift}, fwd[i].lo, fwd[i].hi);
  }
  return out;
}

inline double weight(const FlowField& f, const BrokenTrace& l) {
  auto iv = maximal_intervals(f, l);
  return iv.empty() ? 0.0 : iv.front().length();
}

}  // namespace oracle
