#pragma once

// Directed last passage percolation on a rectangle and the backward
// reconstruction of an optimal path from the flow field.

#include <cstddef>
#include <optional>
#include <vector>

#include "brokenlines/flow.hpp"

namespace brokenlines {

/// Oriented path: t increases by one per step, x moves by one.
struct LatticePath {
  std::vector<Site> sites;
};

struct LppResult {
  double value = 0;
  std::optional<LatticePath> path;
};

/// Forward DP over the (i, j) matrix; ties prefer the (i-1, j) predecessor.
LppResult lpp_dp(const BirthField& xi);

/// Value only, on a raw row-major N x M matrix; no domain is built.
double lpp_value(const std::vector<double>& matrix, int n, int m);

/// Exhaustive search over all monotone paths; N + M <= 14.
double lpp_bruteforce(const BirthField& xi);

/// |G - H| for the field built from xi with zero boundary flows.
double check_g_equals_h(const BirthField& xi);

/// Walks back from the exit corner: step to x-1 when the SW inflow is at
/// least the NW inflow, else to x+1; a step that would leave the domain is
/// replaced by the other one. Requires zero entering boundary flows.
/// `edge_reads`, when given, receives the number of edge masses read.
LatticePath optimal_path_backward(const FlowField& f, std::size_t* edge_reads = nullptr);

double path_sum(const BirthField& xi, const LatticePath& p);

/// Throws unless the path is oriented and runs from the entry to the exit corner.
void validate_path(const Domain& d, const LatticePath& p);

}  // namespace brokenlines
