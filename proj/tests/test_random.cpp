#include <cmath>
#include <set>

#include "brokenlines/distributions.hpp"
#include "brokenlines/random.hpp"
#include "doctest.h"

using namespace brokenlines;

TEST_CASE("philox known answers") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        Philox4x32{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                      {0xffffffffu, 0xffffffffu}) ==
        Philox4x32{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                      {0xa4093822u, 0x299f31d0u}) ==
        Philox4x32{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("splitmix64 reference values") {
  // successive outputs of the reference generator seeded with 0
  const std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(splitmix64(gamma) == 0x6e789e6aa1b965f4ULL);
  CHECK(splitmix64(2 * gamma) == 0x06c45d188009454fULL);
}

TEST_CASE("streams are deterministic and separated") {
  Stream a(42, 1, 2, 3), b(42, 1, 2, 3), c(42, 1, 2, 4), d(43, 1, 2, 3);
  std::set<std::uint64_t> seen;
  for (int k = 0; k < 100; ++k) {
    auto va = a.next_u64();
    CHECK(va == b.next_u64());
    seen.insert(va);
    seen.insert(c.next_u64());
    seen.insert(d.next_u64());
  }
  CHECK(seen.size() == 300);
  CHECK(derive_seed(7, 1) != derive_seed(7, 2));
  CHECK(derive_seed(7, 1) == derive_seed(7, 1));
}

TEST_CASE("uniform draws stay in (0,1]") {
  Stream s(1, 0);
  double lo = 1, hi = 0, sum = 0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    double u = s.uniform_open0();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo > 0);
  CHECK(hi <= 1);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
}

TEST_CASE("negative coordinates give their own streams") {
  auto a = site_stream(5, -1, 3, Role::Birth);
  auto b = site_stream(5, 1, 3, Role::Birth);
  CHECK(a.next_u64() != b.next_u64());
}

TEST_CASE("distribution sample means") {
  const int n = 100000;
  auto avg = [&](const Distribution& d, std::uint32_t tag) {
    Stream s(99, tag);
    double sum = 0;
    for (int k = 0; k < n; ++k) sum += d.sample(s);
    return sum / n;
  };
  CHECK(avg(Distribution::point_mass(3), 1) == 3.0);
  CHECK(std::abs(avg(Distribution::geometric(0.5), 2) - 1.0) < 0.02);
  CHECK(std::abs(avg(Distribution::exponential(2), 3) - 0.5) < 0.01);
  CHECK(std::abs(avg(Distribution::uniform(1, 3), 4) - 2.0) < 0.01);
}

TEST_CASE("geometric pmf matches (1-l) l^k") {
  auto g = Distribution::geometric(0.3);
  for (int k = 0; k < 6; ++k) {
    double pk = g.cdf(k) - g.cdf_left(k);
    CHECK(pk == doctest::Approx(0.7 * std::pow(0.3, k)));
  }
  CHECK(g.mean() == doctest::Approx(0.3 / 0.7));
  CHECK(g.is_integer_valued());
}

TEST_CASE("distribution parsing") {
  CHECK(Distribution::parse("exp:2") == Distribution::exponential(2));
  CHECK(Distribution::parse("geom:0.25") == Distribution::geometric(0.25));
  CHECK(Distribution::parse("point:0") == Distribution::point_mass(0));
  CHECK(Distribution::parse("unif:0:1") == Distribution::uniform(0, 1));
  CHECK_THROWS(Distribution::parse("exp:-1"));
  CHECK_THROWS(Distribution::parse("geom:1"));
  CHECK_THROWS(Distribution::parse("normal:0"));
  CHECK_THROWS(Distribution::parse("unif:2:1"));
  auto t = Triple::parse("exp:1,exp:2,exp:3");
  CHECK(t.pi3 == Distribution::exponential(3));
  auto u = Triple::parse("uniform:0,1,uniform:0,1,uniform:0,1");
  CHECK(u.pi2 == Distribution::uniform(0, 1));
  CHECK(Triple::parse(t.to_string()).pi1 == t.pi1);
  CHECK_THROWS(Triple::parse("exp:1,exp:2"));
}
