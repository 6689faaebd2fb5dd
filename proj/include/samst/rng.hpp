#pragma once

#include <cstdint>
#include <random>

namespace samst {

/// SplitMix64 finalizer, used to derive well-spread per-trial seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seed for trial k of a batch: mix_seed(base + k).
inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t k) noexcept { return mix_seed(base + k); }

// std::mt19937_64 is bit-exact across standard libraries, but the std
// distributions are not, so the index and unit-interval mappings are done
// here to keep trajectories reproducible everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace samst
