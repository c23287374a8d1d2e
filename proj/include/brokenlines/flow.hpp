#pragma once

// Flow fields on the edges of a domain closure, birth fields, boundary data.

#include <map>
#include <memory>
#include <vector>

#include "brokenlines/lattice.hpp"

namespace brokenlines {

/// Integer mode keeps every mass integral (values are stored as doubles, so
/// exact up to 2^53). Mixing modes in one operation is an error.
enum class Arithmetic { Float, Integer };

const char* to_string(Arithmetic a);

using DomainPtr = std::shared_ptr<const Domain>;

inline DomainPtr make_domain(Domain d) { return std::make_shared<const Domain>(std::move(d)); }

/// Throws unless `v` is finite, nonnegative and (in integer mode) integral.
void check_mass(double v, Arithmetic mode, const char* what);

/// Relative tolerance 1e-9 scaled by `scale`, absolute floor 1e-12.
inline double mass_tolerance(double scale) {
  double t = 1e-9 * scale;
  return t > 1e-12 ? t : 1e-12;
}

/// Nonnegative mass per edge of E(closure), aligned with domain().edges().
class FlowField {
 public:
  explicit FlowField(DomainPtr domain, Arithmetic mode = Arithmetic::Float);
  FlowField(DomainPtr domain, std::vector<double> mass, Arithmetic mode = Arithmetic::Float);

  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  Arithmetic mode() const { return mode_; }

  const std::vector<double>& masses() const { return mass_; }
  double mass(EdgeId e) const;
  /// Mass of `e`, or 0 when the edge is not part of E(closure).
  double mass_or_zero(EdgeId e) const;

 private:
  DomainPtr domain_;
  std::vector<double> mass_;
  Arithmetic mode_;
};

/// Birth masses per site of S, aligned with domain().sites().
class BirthField {
 public:
  explicit BirthField(DomainPtr domain, Arithmetic mode = Arithmetic::Float);
  BirthField(DomainPtr domain, std::vector<double> xi, Arithmetic mode = Arithmetic::Float);

  /// Rectangle birth field from an N x M matrix (rows i, columns j).
  static BirthField from_matrix(const std::vector<std::vector<double>>& m,
                                Arithmetic mode = Arithmetic::Float);

  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  Arithmetic mode() const { return mode_; }
  const std::vector<double>& values() const { return xi_; }
  double at(Site y) const;
  /// Rows i = 1..N, columns j = 1..M.
  std::vector<std::vector<double>> to_matrix() const;

 private:
  DomainPtr domain_;
  std::vector<double> xi_;
  Arithmetic mode_;
};

/// Entering boundary data. zeta_plus lives on the SW side (ascending inflow),
/// zeta_minus on the NW side (descending inflow). Missing keys mean 0.
struct BoundaryFlow {
  std::map<Site, double> zeta_plus;
  std::map<Site, double> zeta_minus;
};

/// Exit data: eta_plus on the NE side, eta_minus on the SE side.
struct ExitFlow {
  std::map<Site, double> eta_plus;
  std::map<Site, double> eta_minus;
};

FlowField field_from_birth(const BirthField& xi, const BoundaryFlow& zeta = {});

struct ConservationViolation {
  Site site;
  double residual;
};

/// Sites of S where (nw + ne) and (sw + se) differ beyond tolerance.
std::vector<ConservationViolation> check_conservation(const FlowField& f);

struct Extracted {
  BoundaryFlow zeta;
  BirthField xi;
  ExitFlow exit;
};

/// Inverse of field_from_birth. Rectangles only.
Extracted extract(const FlowField& f);

struct BoundarySums {
  double lower = 0;  // SW inflow + SE outflow
  double upper = 0;  // NW inflow + NE outflow
};

BoundarySums boundary_sums(const FlowField& f);

/// Total crossing mass H; throws if the two boundary sums disagree.
double total_flow_h(const FlowField& f);

/// Edgewise sum; domains and modes must agree.
FlowField add_fields(const FlowField& a, const FlowField& b);

/// Max edgewise absolute difference; domains must agree.
double max_abs_diff(const FlowField& a, const FlowField& b);

}  // namespace brokenlines
