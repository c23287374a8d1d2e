#pragma once

// Discrete transition kernel, the reversibility operators, sampling of
// fields from a triple of laws, and the statistical checks built on them.

#include <array>
#include <cstdint>
#include <optional>

#include "brokenlines/distributions.hpp"
#include "brokenlines/flow.hpp"
#include "brokenlines/stats.hpp"

namespace brokenlines {

constexpr double kDefaultAlpha = 0.01;

/// q(n+, n- | m+, m-) for the geometric chain with parameter lambda.
double q_kernel(int nplus, int nminus, int mplus, int mminus, double lambda);

/// Max |lhs - rhs| of the kernel duality over all indices <= kmax.
double check_q_duality(double lambda, int kmax);

std::array<double, 3> operator_r(double r, double s, double t);
std::array<double, 4> operator_t(double r, double s, double t);

enum class VerdictReason { Degenerate, ExponentialFamily, GeometricFamily, NotSelfDual };

const char* to_string(VerdictReason r);

struct Verdict {
  bool self_dual = false;
  VerdictReason reason = VerdictReason::NotSelfDual;
};

Verdict classify_triple(const Triple& t);

/// Samples (r,s,t) from the product law, applies R and compares marginals
/// (two-sample KS) and pairwise product moments (z-tests) against a fresh
/// sample. Family-wise level alpha, Bonferroni-split.
TestReport check_r_invariance(const Triple& t, long nsamples, std::uint64_t seed,
                              double alpha = kDefaultAlpha);

struct SampledInputs {
  BirthField xi;
  BoundaryFlow zeta;
};

/// zeta+ ~ pi1 on the SW side, zeta- ~ pi2 on the NW side, xi ~ pi3 in S,
/// each drawn from its own (seed, t, x, role) stream. Integer mode when all
/// three laws are integer-valued.
SampledInputs sample_inputs(const DomainPtr& d, const Triple& t, std::uint64_t seed);
FlowField sample_field(const DomainPtr& d, const Triple& t, std::uint64_t seed);

/// Geometric chain: Geom(lambda) boundary flows, Geom(lambda^2) births.
FlowField evolve_chain(const DomainPtr& d, double lambda, std::uint64_t seed);
Triple chain_triple(double lambda);

/// Exit flows of fields sampled from a self-dual triple: one-sample KS of
/// every exit flow against pi1 (NE side) or pi2 (SE side), plus pairwise
/// correlation tests. Throws for triples that are not self-dual.
TestReport burke_exit_test(int n, int m, const Triple& t, long nsamples, std::uint64_t seed,
                           double alpha = kDefaultAlpha);

/// (t, x) -> (T - t, x + N - M) with T = N + M - 2; maps S(N,M) onto S(M,N).
Site reverse_site(const Domain& d, Site y);
FlowField time_reverse(const FlowField& f);

/// Sub-rectangle of cells i0+1..i0+n, j0+1..j0+m.
struct SubRect {
  int i0 = 0;
  int j0 = 0;
  int n = 1;
  int m = 1;
};

/// Law of the chain on S(N,M) restricted to `sub` versus the chain run
/// directly on the sub-rectangle (optionally with a different parameter for
/// the direct sampler): per-edge chi-square homogeneity and per-site
/// product-moment z-tests.
TestReport consistency_test(int n, int m, SubRect sub, double lambda, long nsamples,
                            std::uint64_t seed, std::optional<double> direct_lambda = {},
                            double alpha = kDefaultAlpha);

}  // namespace brokenlines
