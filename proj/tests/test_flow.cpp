#include <random>

#include "brokenlines/flow.hpp"
#include "doctest.h"
#include "support/random_fields.hpp"

using namespace brokenlines;

TEST_CASE("single site with a birth") {
  auto d = make_domain(Domain::rect(1, 1));
  BirthField xi(d, {2.5});
  auto f = field_from_birth(xi);
  auto e = incident_edges({0, 0});
  CHECK(f.mass(e.ne) == 2.5);
  CHECK(f.mass(e.se) == 2.5);
  CHECK(f.mass(e.sw) == 0.0);
  CHECK(f.mass(e.nw) == 0.0);
  CHECK(total_flow_h(f) == 2.5);
  auto ex = extract(f);
  CHECK(ex.xi.values() == std::vector<double>{2.5});
  CHECK(ex.zeta.zeta_plus.at({0, 0}) == 0.0);
}

TEST_CASE("single site with boundary inflow") {
  auto d = make_domain(Domain::rect(1, 1));
  BoundaryFlow z;
  z.zeta_plus[{0, 0}] = 1.0;
  z.zeta_minus[{0, 0}] = 0.4;
  auto f = field_from_birth(BirthField(d, {0.0}), z);
  auto e = incident_edges({0, 0});
  CHECK(f.mass(e.ne) == doctest::Approx(0.6));
  CHECK(f.mass(e.se) == 0.0);
  CHECK(check_conservation(f).empty());
  auto ex = extract(f);
  CHECK(ex.xi.values()[0] == 0.0);
  CHECK(ex.zeta.zeta_plus.at({0, 0}) == 1.0);
  CHECK(ex.zeta.zeta_minus.at({0, 0}) == 0.4);
}

TEST_CASE("zero inputs give the zero field") {
  auto d = make_domain(Domain::rect(4, 3));
  auto f = field_from_birth(BirthField(d));
  for (double v : f.masses()) CHECK(v == 0.0);
  CHECK(check_conservation(f).empty());
  CHECK(total_flow_h(f) == 0.0);
}

TEST_CASE("boundary keys must sit on the entering sides") {
  auto d = make_domain(Domain::rect(3, 3));
  BoundaryFlow z;
  z.zeta_plus[{2, 0}] = 1.0;  // interior site
  CHECK_THROWS_AS(field_from_birth(BirthField(d), z), Error);
  BoundaryFlow z2;
  z2.zeta_minus[{1, -1}] = 1.0;  // SW side, not NW
  CHECK_THROWS_AS(field_from_birth(BirthField(d), z2), Error);
  BoundaryFlow z3;
  z3.zeta_plus[{0, 0}] = -1.0;
  CHECK_THROWS_AS(field_from_birth(BirthField(d), z3), Error);
}

TEST_CASE("integer mode rejects fractions") {
  auto d = make_domain(Domain::rect(2, 2));
  CHECK_THROWS_AS(BirthField(d, {1, 0.5, 0, 0}, Arithmetic::Integer), Error);
  CHECK_THROWS_AS(BirthField(d, {1, -1, 0, 0}), Error);
  auto a = field_from_birth(BirthField(d, {1, 2, 3, 4}, Arithmetic::Integer));
  auto b = field_from_birth(BirthField(d, {1, 2, 3, 4}));
  CHECK_THROWS_AS(add_fields(a, b), Error);
}

TEST_CASE("perturbing one edge flags exactly its endpoints in S") {
  auto d = make_domain(Domain::rect(2, 2));
  auto f = field_from_birth(BirthField(d, {1, 2, 3, 4}));
  for (std::size_t k = 0; k < d->edges().size(); ++k) {
    auto m = f.masses();
    m[k] += 1.0;
    FlowField g(d, m);
    auto bad = check_conservation(g);
    EdgeId e = d->edges()[k];
    std::vector<Site> expect;
    for (Site s : {e.base, e.head()})
      if (d->contains(s)) expect.push_back(s);
    std::sort(expect.begin(), expect.end());
    std::vector<Site> got;
    for (auto& v : bad) {
      got.push_back(v.site);
      CHECK(v.residual == doctest::Approx(1.0));
    }
    CHECK(got == expect);
    if (!bad.empty()) {
      CHECK_THROWS_AS(extract(g), Error);
    }
  }
}

TEST_CASE("extract inverts field_from_birth") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 1 + static_cast<int>(rng() % 6), m = 1 + static_cast<int>(rng() % 6);
    auto mode = rep % 2 ? Arithmetic::Integer : Arithmetic::Float;
    auto in = testutil::random_inputs(rng, n, m, mode);
    auto f = field_from_birth(in.xi, in.zeta);
    CHECK(check_conservation(f).empty());
    auto ex = extract(f);
    for (std::size_t k = 0; k < in.xi.values().size(); ++k)
      CHECK(ex.xi.values()[k] == doctest::Approx(in.xi.values()[k]).epsilon(1e-12));
    for (auto& [y, v] : in.zeta.zeta_plus) CHECK(ex.zeta.zeta_plus.at(y) == v);
    for (auto& [y, v] : in.zeta.zeta_minus) CHECK(ex.zeta.zeta_minus.at(y) == v);
    auto g = field_from_birth(ex.xi, ex.zeta);
    CHECK(max_abs_diff(f, g) <= 1e-9 * std::max(1.0, total_flow_h(f)));
    if (mode == Arithmetic::Integer) {
      CHECK(max_abs_diff(f, g) == 0.0);
      double h = total_flow_h(f);
      CHECK(h == std::floor(h));
    }
  }
}

TEST_CASE("H is additive and both boundary sums agree") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    auto a = testutil::random_field(rng, 5, 4, Arithmetic::Float);
    auto b = testutil::random_field(rng, 5, 4, Arithmetic::Float);
    auto s = boundary_sums(a);
    CHECK(s.lower == doctest::Approx(s.upper).epsilon(1e-12));
    CHECK(total_flow_h(add_fields(a, b)) ==
          doctest::Approx(total_flow_h(a) + total_flow_h(b)).epsilon(1e-12));
  }
}

TEST_CASE("birth matrix indexing") {
  auto xi = BirthField::from_matrix({{1, 2}, {3, 4}, {5, 6}});
  CHECK(xi.domain().n() == 3);
  CHECK(xi.domain().m() == 2);
  CHECK(xi.at({0, 0}) == 1);
  CHECK(xi.at({1, 1}) == 2);
  CHECK(xi.at({1, -1}) == 3);
  CHECK(xi.at({3, -1}) == 6);
  CHECK(xi.to_matrix() == std::vector<std::vector<double>>{{1, 2}, {3, 4}, {5, 6}});
}

TEST_CASE("hex fields build and conserve") {
  auto h = make_domain(Domain::hex(0, 4, {1, 2}, {-2, -3, -2, -1, 0}, {2, 3, 4, 3, 2}));
  std::vector<double> xi(h->sites().size(), 1.0);
  BoundaryFlow z;
  for (Site y : h->side_sites(Side::SW)) z.zeta_plus[y] = 2.0;
  auto f = field_from_birth(BirthField(h, xi), z);
  CHECK(check_conservation(f).empty());
  CHECK_THROWS_AS(extract(f), Error);
  CHECK_THROWS_AS(total_flow_h(f), Error);
}
