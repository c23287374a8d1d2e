#include <algorithm>
#include <set>

#include "brokenlines/lattice.hpp"
#include "doctest.h"

using namespace brokenlines;

namespace {

// brute-force scan of the defining inequalities
std::vector<Site> scan_rect(int n, int m) {
  std::vector<Site> out;
  for (int t = -5; t <= 2 * (n + m); ++t)
    for (int x = -2 * n - 2; x <= 2 * m + 2; ++x)
      if (((t + x) & 1) == 0 && t + x >= 0 && t + x <= 2 * (m - 1) && t - x >= 0 &&
          t - x <= 2 * (n - 1))
        out.push_back({t, x});
  std::sort(out.begin(), out.end());
  return out;
}

std::set<EdgeId> brute_edges(const std::vector<Site>& sites) {
  std::set<EdgeId> out;
  for (Site y : sites)
    for (Site z : {Site{y.t - 1, y.x - 1}, Site{y.t - 1, y.x + 1}, Site{y.t + 1, y.x - 1},
                   Site{y.t + 1, y.x + 1}})
      out.insert(edge_between(y, z));
  return out;
}

}  // namespace

TEST_CASE("incident edges unfold the definition") {
  auto e = incident_edges({0, 0});
  CHECK(e.ne == EdgeId{{0, 0}, Slope::Up});
  CHECK(e.se == EdgeId{{0, 0}, Slope::Down});
  CHECK(e.sw == EdgeId{{-1, -1}, Slope::Up});
  CHECK(e.nw == EdgeId{{-1, 1}, Slope::Down});
  CHECK(incident_edges({0, 0}).ne == incident_edges({1, 1}).sw);
  CHECK(incident_edges({2, 0}).nw == EdgeId{{1, 1}, Slope::Down});
  CHECK(incident_edges({3, 5}).nw == incident_edges({2, 6}).se);
}

TEST_CASE("edge canonicalisation round trips") {
  for (int t = -3; t <= 3; ++t)
    for (int x = -4; x <= 4; ++x) {
      if (((t + x) & 1) != 0) continue;
      for (Slope s : {Slope::Up, Slope::Down}) {
        EdgeId e{{t, x}, s};
        CHECK(edge_between(e.base, e.head()) == e);
        CHECK(edge_between(e.head(), e.base) == e);
      }
    }
  CHECK_THROWS_AS(edge_between({0, 0}, {0, 2}), Error);
}

TEST_CASE("rect domain sites match the inequalities") {
  CHECK_THROWS_AS(Domain::rect(0, 3), Error);
  CHECK_THROWS_AS(Domain::rect(2, 0), Error);
  auto d11 = Domain::rect(1, 1);
  CHECK(d11.sites() == std::vector<Site>{{0, 0}});
  CHECK(d11.outer_sites().size() == 4);
  CHECK(d11.edges().size() == 4);

  auto d22 = Domain::rect(2, 2);
  CHECK(d22.sites() == std::vector<Site>{{0, 0}, {1, -1}, {1, 1}, {2, 0}});
  CHECK(d22.edges().size() == 12);

  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= 5; ++m) {
      auto d = Domain::rect(n, m);
      auto want = scan_rect(n, m);
      CHECK(d.sites() == want);
      auto be = brute_edges(want);
      CHECK(std::vector<EdgeId>(be.begin(), be.end()) == d.edges());
      CHECK(static_cast<int>(d.edges().size()) == 2 * n * m + n + m);
      CHECK(d.entry_corner() == Site{0, 0});
      CHECK(d.exit_corner() == Site{n + m - 2, m - n});
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= m; ++j) {
          Site y = d.cell_site(i, j);
          CHECK(d.contains(y));
          CHECK(d.site_cell(y) == std::pair{i, j});
        }
    }
  auto d32 = Domain::rect(3, 2);
  CHECK(d32.sites().front() == Site{0, 0});
  CHECK(d32.exit_corner() == Site{3, -1});
}

TEST_CASE("outer ring classification on rectangles") {
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      auto d = Domain::rect(n, m);
      // closure by brute force
      std::set<Site> closure(d.sites().begin(), d.sites().end());
      for (Site y : d.sites())
        for (Site z : {Site{y.t - 1, y.x - 1}, Site{y.t - 1, y.x + 1}, Site{y.t + 1, y.x - 1},
                       Site{y.t + 1, y.x + 1}})
          closure.insert(z);
      std::vector<Site> ring;
      for (Site z : closure)
        if (!d.contains(z)) ring.push_back(z);
      CHECK(ring == d.outer_sites());
      int counts[4] = {0, 0, 0, 0};
      for (Site z : ring) {
        EdgeId e = d.outer_edge(z);
        CHECK(d.has_edge(e));
        counts[static_cast<int>(d.outer_side(z))]++;
      }
      CHECK(counts[static_cast<int>(Side::SW)] == n);
      CHECK(counts[static_cast<int>(Side::SE)] == m);
      CHECK(counts[static_cast<int>(Side::NW)] == m);
      CHECK(counts[static_cast<int>(Side::NE)] == n);
      CHECK(d.side_sites(Side::SW).size() == static_cast<std::size_t>(n));
      CHECK(d.side_sites(Side::NW).size() == static_cast<std::size_t>(m));
      CHECK(d.side_sites(Side::SE).size() == static_cast<std::size_t>(m));
      CHECK(d.side_sites(Side::NE).size() == static_cast<std::size_t>(n));
    }
}

TEST_CASE("interior sites have all four edges") {
  auto d = Domain::rect(4, 5);
  for (Site y : d.sites()) {
    auto e = incident_edges(y);
    for (EdgeId k : {e.sw, e.nw, e.ne, e.se}) CHECK(d.has_edge(k));
  }
}

TEST_CASE("rect equals the matching hex") {
  auto r = Domain::rect(3, 4);
  auto h = Domain::hex(0, 5, {2, 3}, r.lower_path(), r.upper_path());
  CHECK(h.sites() == r.sites());
  CHECK(h.edges() == r.edges());
  CHECK_FALSE(h.is_rect());
  CHECK_THROWS_AS(h.n(), Error);
  CHECK_THROWS_AS(h.outer_side({-1, -1}), Error);
}

TEST_CASE("hex validation") {
  // vertical sides at t=0 and t=4
  auto h = Domain::hex(0, 4, {1, 2}, {-2, -3, -2, -1, 0}, {2, 3, 4, 3, 2});
  CHECK(h.contains({0, 0}));
  CHECK(h.contains({2, 4}));
  CHECK_FALSE(h.contains({2, 6}));
  CHECK(h.sites().size() == 3 + 4 + 4 + 3 + 2 - 0);
  CHECK_THROWS_AS(Domain::hex(0, 2, {1, 1}, {0, -1, 0}, {0, 2, 0}), Error);
  CHECK_THROWS_AS(Domain::hex(0, 1, {0, 0}, {1, 0}, {1, 0}), Error);
}
