#include <doctest.h>

#include <array>
#include <set>

#include "samst/rng.hpp"

using namespace samst;

TEST_CASE("mix_seed spreads consecutive seeds") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t k = 0; k < 1000; ++k) seen.insert(trial_seed(42, k));
  CHECK(seen.size() == 1000);
  CHECK(trial_seed(42, 3) == mix_seed(45));
  // Reference value of the SplitMix64 finalizer for input 0.
  CHECK(mix_seed(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("uniform_index passes a chi-square test on m = 10") {
  Rng rng(2024);
  std::array<std::size_t, 10> counts{};
  constexpr std::size_t kDraws = 100000;
  for (std::size_t i = 0; i < kDraws; ++i) {
    const auto k = rng.uniform_index(10);
    REQUIRE(k < 10);
    ++counts[k];
  }
  const double expected = kDraws / 10.0;
  double chi2 = 0.0;
  for (auto c : counts) chi2 += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
  // Upper 1e-3 quantile of chi-square with 9 degrees of freedom.
  CHECK(chi2 < 27.877);
}

TEST_CASE("uniform01 stays in [0, 1)") {
  Rng rng(7);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 1e-3);
  CHECK(hi > 0.999);
}

TEST_CASE("equal seeds give equal streams") {
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}
