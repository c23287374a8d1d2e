#pragma once

// Seeded random inputs for property tests.

#include <random>

#include "brokenlines/flow.hpp"

namespace testutil {

using namespace brokenlines;

struct Inputs {
  BirthField xi;
  BoundaryFlow zeta;
};

/// Random (zeta, xi) on an N x M rectangle. Float mode draws exponentials,
/// integer mode small geometric counts; `sparsity` zeroes a share of values
/// so ties and empty sites show up.
inline Inputs random_inputs(std::mt19937_64& rng, int n, int m, Arithmetic mode,
                            double sparsity = 0.3, bool boundary = true) {
  auto d = make_domain(Domain::rect(n, m));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::exponential_distribution<double> ex(1.0);
  std::geometric_distribution<int> geo(0.45);
  auto draw = [&]() -> double {
    if (u(rng) < sparsity) return 0.0;
    return mode == Arithmetic::Integer ? static_cast<double>(geo(rng)) : ex(rng);
  };
  std::vector<double> xi(d->sites().size());
  for (double& v : xi) v = draw();
  Inputs in{BirthField(d, std::move(xi), mode), {}};
  if (boundary) {
    for (const Site& y : d->side_sites(Side::SW)) in.zeta.zeta_plus[y] = draw();
    for (const Site& y : d->side_sites(Side::NW)) in.zeta.zeta_minus[y] = draw();
  }
  return in;
}

inline FlowField random_field(std::mt19937_64& rng, int n, int m, Arithmetic mode,
                              double sparsity = 0.3, bool boundary = true) {
  auto in = random_inputs(rng, n, m, mode, sparsity, boundary);
  return field_from_birth(in.xi, in.zeta);
}

}  // namespace testutil
