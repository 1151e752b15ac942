#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace swarmbo {

/// Seeded random source. Uniform draws are built directly from the 64-bit
/// engine output so they are identical on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() { return normal_(engine_); }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Mixes a root seed with a component tag ("init", "pso:3", ...) so that
/// every component of a run draws from its own decoupled stream.
std::uint64_t derive_seed(std::uint64_t root, std::string_view tag) noexcept;

}  // namespace swarmbo
