#pragma once

// Counter-based random numbers: Philox4x32-10 keyed by a 64-bit seed.
// A stream is addressed by three 32-bit coordinates (for fields: t, x and a
// role tag) and walks the fourth counter word, so draws never depend on
// iteration order or thread layout.

#include <array>
#include <cstdint>

namespace brokenlines {

using Philox4x32 = std::array<std::uint32_t, 4>;

Philox4x32 philox4x32_10(Philox4x32 counter, std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);

/// Independent seed for replica `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Stream {
 public:
  Stream(std::uint64_t seed, std::uint32_t a, std::uint32_t b = 0, std::uint32_t c = 0);

  std::uint64_t next_u64();
  /// Uniform on (0, 1], 53 bits.
  double uniform_open0();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  Philox4x32 ctr_;
  Philox4x32 buf_{};
  int used_ = 4;
};

/// Role tags for field sampling.
enum class Role : std::uint32_t { ZetaPlus = 1, ZetaMinus = 2, Birth = 3 };

inline Stream site_stream(std::uint64_t seed, int t, int x, Role role) {
  return Stream(seed, static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(x),
                static_cast<std::uint32_t>(role));
}

}  // namespace brokenlines
