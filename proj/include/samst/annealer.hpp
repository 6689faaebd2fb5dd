#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "samst/graph.hpp"

namespace samst {

enum class TelemetryLevel { None, Summary, Full };

/// Simulated annealing configuration with multiplicative cooling
/// T_t = t0 * (1 - 1/ell)^t.
struct SaConfig {
  double t0 = 1.0;
  double ell = 4.0;
  std::uint64_t max_steps = 0;
  std::uint64_t seed = 0;
  TelemetryLevel telemetry = TelemetryLevel::Summary;
  /// Freeze-out factor a. When set, accepted insertions of edges with
  /// weight >= a * T_t are recorded as heavy inclusions.
  std::optional<double> heavy_factor;
  /// Starting state; the all-ones string when empty. Must be connected.
  std::optional<std::vector<std::uint8_t>> initial_bits;

  double beta() const noexcept { return 1.0 - 1.0 / ell; }
  /// Throws Error(InvalidConfig) unless t0 > 0 and ell > 2.
  void validate() const;
};

/// Closed-form temperature t0 * (1 - 1/ell)^t. Requires ell > 1.
double temperature(double t0, double ell, std::uint64_t t);
inline double temperature(const SaConfig& cfg, std::uint64_t t) { return temperature(cfg.t0, cfg.ell, t); }

/// Metropolis acceptance: 1 for delta_f <= 0, exp(-delta_f/temp) otherwise,
/// exactly 0 for delta_f = +inf (infeasible proposal).
double acceptance_probability(double delta_f, double temp);

struct AcceptanceCounts {
  std::uint64_t improving = 0;
  std::uint64_t equal = 0;
  std::uint64_t worsening_accepted = 0;
  std::uint64_t worsening_rejected = 0;
  std::uint64_t infeasible_rejected = 0;

  std::uint64_t total() const noexcept {
    return improving + equal + worsening_accepted + worsening_rejected + infeasible_rejected;
  }
  friend bool operator==(const AcceptanceCounts&, const AcceptanceCounts&) = default;
};

struct AcceptedMove {
  std::uint64_t step = 0;
  std::uint32_t edge = 0;
  bool inserted = false;
  double delta_f = 0.0;
  double temperature = 0.0;

  friend bool operator==(const AcceptedMove&, const AcceptedMove&) = default;
};

struct HeavyInclusion {
  std::uint64_t step = 0;
  std::uint32_t edge = 0;
  double weight = 0.0;
  double temperature = 0.0;

  friend bool operator==(const HeavyInclusion&, const HeavyInclusion&) = default;
};

struct RunRecord {
  explicit RunRecord(EdgeSubset initial)
      : initial_state(initial), final_state(std::move(initial)), final_fitness(Fitness::infeasible()) {}

  EdgeSubset initial_state;
  EdgeSubset final_state;
  Fitness final_fitness;
  std::uint64_t steps_executed = 0;
  AcceptanceCounts counts;
  std::vector<HeavyInclusion> heavy_inclusions;
  /// Every accepted move, populated only at TelemetryLevel::Full.
  std::vector<AcceptedMove> moves;
  TelemetryLevel telemetry = TelemetryLevel::None;
  std::chrono::nanoseconds wall_time{0};
};

/// Telemetry sink. Called after each accepted move with the updated state.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_start(const Graph& /*g*/, const EdgeSubset& /*initial*/) {}
  /// Return false to stop the run after this step.
  virtual bool on_accepted(const AcceptedMove& /*move*/, const EdgeSubset& /*state*/) { return true; }
};

/// Runs cfg.max_steps iterations of single-bit-flip simulated annealing.
/// Disconnected proposals are rejected, so the state stays connected.
RunRecord run(const Graph& g, const SaConfig& cfg, std::span<RunObserver* const> observers = {});

}  // namespace samst
