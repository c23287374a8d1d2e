#include "brokenlines/flow.hpp"

#include <algorithm>
#include <cmath>

namespace brokenlines {

const char* to_string(Arithmetic a) { return a == Arithmetic::Integer ? "int" : "float"; }

void check_mass(double v, Arithmetic mode, const char* what) {
  if (!std::isfinite(v)) throw Error(std::string(what) + ": mass is not finite");
  if (v < 0) throw Error(std::string(what) + ": negative mass " + std::to_string(v));
  if (mode == Arithmetic::Integer && (v != std::floor(v) || v > 9007199254740992.0))
    throw Error(std::string(what) + ": non-integral mass " + std::to_string(v) +
                " in integer mode");
}

FlowField::FlowField(DomainPtr domain, Arithmetic mode)
    : domain_(std::move(domain)), mode_(mode) {
  if (!domain_) throw Error("flow field needs a domain");
  mass_.assign(domain_->edges().size(), 0.0);
}

FlowField::FlowField(DomainPtr domain, std::vector<double> mass, Arithmetic mode)
    : domain_(std::move(domain)), mass_(std::move(mass)), mode_(mode) {
  if (!domain_) throw Error("flow field needs a domain");
  if (mass_.size() != domain_->edges().size())
    throw Error("flow field: expected " + std::to_string(domain_->edges().size()) +
                " edge masses, got " + std::to_string(mass_.size()));
  for (double v : mass_) check_mass(v, mode_, "flow field");
}

double FlowField::mass(EdgeId e) const {
  auto k = domain_->edge_index(e);
  if (!k) throw Error("edge " + to_string(e) + " is not in the domain closure");
  return mass_[*k];
}

double FlowField::mass_or_zero(EdgeId e) const {
  auto k = domain_->edge_index(e);
  return k ? mass_[*k] : 0.0;
}

BirthField::BirthField(DomainPtr domain, Arithmetic mode)
    : domain_(std::move(domain)), mode_(mode) {
  if (!domain_) throw Error("birth field needs a domain");
  xi_.assign(domain_->sites().size(), 0.0);
}

BirthField::BirthField(DomainPtr domain, std::vector<double> xi, Arithmetic mode)
    : domain_(std::move(domain)), xi_(std::move(xi)), mode_(mode) {
  if (!domain_) throw Error("birth field needs a domain");
  if (xi_.size() != domain_->sites().size())
    throw Error("birth field: expected " + std::to_string(domain_->sites().size()) +
                " values, got " + std::to_string(xi_.size()));
  for (double v : xi_) check_mass(v, mode_, "birth field");
}

BirthField BirthField::from_matrix(const std::vector<std::vector<double>>& m, Arithmetic mode) {
  if (m.empty() || m[0].empty()) throw Error("birth matrix is empty");
  const int n = static_cast<int>(m.size());
  const int mm = static_cast<int>(m[0].size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != mm) throw Error("birth matrix rows differ in length");
  auto d = make_domain(Domain::rect(n, mm));
  std::vector<double> xi(d->sites().size());
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= mm; ++j)
      xi[*d->site_index(d->cell_site(i, j))] =
          m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  return BirthField(d, std::move(xi), mode);
}

double BirthField::at(Site y) const {
  auto k = domain_->site_index(y);
  if (!k) throw Error("site " + to_string(y) + " is not in the domain");
  return xi_[*k];
}

std::vector<std::vector<double>> BirthField::to_matrix() const {
  const int n = domain_->n();
  const int m = domain_->m();
  std::vector<std::vector<double>> out(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(m)));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j)
      out[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
          at(domain_->cell_site(i, j));
  return out;
}

FlowField field_from_birth(const BirthField& xi, const BoundaryFlow& zeta) {
  const Domain& d = xi.domain();
  const Arithmetic mode = xi.mode();
  std::vector<double> mass(d.edges().size(), 0.0);
  auto slot = [&](EdgeId e) -> double& { return mass[*d.edge_index(e)]; };

  auto load = [&](const std::map<Site, double>& side, Side which, bool plus) {
    for (const auto& [y, v] : side) {
      if (!d.contains(y) || !d.on_side(y, which))
        throw Error(std::string("boundary flow ") + (plus ? "zeta+" : "zeta-") + " keyed on " +
                    to_string(y) + ", which is not on the matching entering boundary");
      check_mass(v, mode, "boundary flow");
      auto in = incident_edges(y);
      slot(plus ? in.sw : in.nw) = v;
    }
  };
  load(zeta.zeta_plus, Side::SW, true);
  load(zeta.zeta_minus, Side::NW, false);

  const auto& sites = d.sites();
  const auto& b = xi.values();
  for (std::size_t k = 0; k < sites.size(); ++k) {
    auto in = incident_edges(sites[k]);
    double zp = slot(in.sw);
    double zm = slot(in.nw);
    double diff = zp - zm;
    slot(in.ne) = b[k] + (diff > 0 ? diff : 0.0);
    slot(in.se) = b[k] + (diff < 0 ? -diff : 0.0);
  }
  return FlowField(xi.domain_ptr(), std::move(mass), mode);
}

std::vector<ConservationViolation> check_conservation(const FlowField& f) {
  std::vector<ConservationViolation> out;
  for (const Site& y : f.domain().sites()) {
    auto in = incident_edges(y);
    double sw = f.mass(in.sw), nw = f.mass(in.nw), ne = f.mass(in.ne), se = f.mass(in.se);
    double r = std::abs((nw + ne) - (sw + se));
    double tol = f.mode() == Arithmetic::Integer
                     ? 0.0
                     : mass_tolerance(std::max({sw, nw, ne, se}));
    if (r > tol) out.push_back({y, r});
  }
  return out;
}

namespace {

void require_conservation(const FlowField& f) {
  auto bad = check_conservation(f);
  if (!bad.empty())
    throw Error("conservation violated at " + std::to_string(bad.size()) + " site(s), first " +
                to_string(bad[0].site) + " residual " + std::to_string(bad[0].residual));
}

}  // namespace

Extracted extract(const FlowField& f) {
  const Domain& d = f.domain();
  if (!d.is_rect()) throw Error("extract is only supported on rectangular domains");
  require_conservation(f);
  Extracted out{{}, BirthField(f.domain_ptr(), f.mode()), {}};
  std::vector<double> xi(d.sites().size());
  for (std::size_t k = 0; k < d.sites().size(); ++k) {
    Site y = d.sites()[k];
    auto in = incident_edges(y);
    double ep = f.mass(in.ne), em = f.mass(in.se);
    // with conservation, min(eta+, eta-) equals eta+ - [zeta+ - zeta-]+
    xi[k] = std::min(ep, em);
    if (d.on_side(y, Side::SW)) out.zeta.zeta_plus[y] = f.mass(in.sw);
    if (d.on_side(y, Side::NW)) out.zeta.zeta_minus[y] = f.mass(in.nw);
    if (d.on_side(y, Side::NE)) out.exit.eta_plus[y] = ep;
    if (d.on_side(y, Side::SE)) out.exit.eta_minus[y] = em;
  }
  out.xi = BirthField(f.domain_ptr(), std::move(xi), f.mode());
  return out;
}

BoundarySums boundary_sums(const FlowField& f) {
  const Domain& d = f.domain();
  BoundarySums s;
  for (const Site& y : d.sites()) {
    auto in = incident_edges(y);
    if (d.on_side(y, Side::SW)) s.lower += f.mass(in.sw);
    if (d.on_side(y, Side::SE)) s.lower += f.mass(in.se);
    if (d.on_side(y, Side::NW)) s.upper += f.mass(in.nw);
    if (d.on_side(y, Side::NE)) s.upper += f.mass(in.ne);
  }
  return s;
}

double total_flow_h(const FlowField& f) {
  if (!f.domain().is_rect()) throw Error("H is only supported on rectangular domains");
  auto s = boundary_sums(f);
  double tol = f.mode() == Arithmetic::Integer ? 0.0 : mass_tolerance(std::max(s.lower, s.upper));
  if (std::abs(s.lower - s.upper) > tol)
    throw Error("boundary sums disagree: lower " + std::to_string(s.lower) + " vs upper " +
                std::to_string(s.upper));
  return s.lower;
}

FlowField add_fields(const FlowField& a, const FlowField& b) {
  if (!a.domain().same_shape(b.domain())) throw Error("cannot add fields on different domains");
  if (a.mode() != b.mode()) throw Error("cannot add fields of different arithmetic modes");
  std::vector<double> m(a.masses());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] += b.masses()[k];
  return FlowField(a.domain_ptr(), std::move(m), a.mode());
}

double max_abs_diff(const FlowField& a, const FlowField& b) {
  if (!a.domain().same_shape(b.domain())) throw Error("fields live on different domains");
  double r = 0;
  for (std::size_t k = 0; k < a.masses().size(); ++k)
    r = std::max(r, std::abs(a.masses()[k] - b.masses()[k]));
  return r;
}

}  // namespace brokenlines
