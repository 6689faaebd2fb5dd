#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "samst/annealer.hpp"
#include "samst/graph.hpp"
#include "samst/params.hpp"

namespace samst {

struct TrialRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  double final_weight = 0.0;
  double opt_weight = 0.0;
  double ratio = 1.0;
  bool success = false;
  std::size_t heavy_violations = 0;
  double wall_ms = 0.0;
};

struct TrialAggregates {
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  std::size_t trials_with_violations = 0;
};

struct TrialReport {
  std::string instance_hash;
  ScheduleParams params;
  std::size_t trials = 0;
  std::uint64_t base_seed = 0;
  double target_ratio = 1.0;
  bool require_optimal = false;
  std::vector<TrialRow> rows;
  TrialAggregates aggregates;
  /// (1 - delta) - 3 sqrt(delta (1 - delta) / R).
  double pass_threshold = 0.0;
  bool passed = false;
};

struct TrialOptions {
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  unsigned threads = 1;
  /// Success means ratio <= target_ratio, or exact optimality when
  /// require_optimal is set.
  double target_ratio = 2.0;
  bool require_optimal = false;
  TelemetryLevel telemetry = TelemetryLevel::Summary;
  /// Receives each finished run in trial-index order, whatever the thread count.
  std::function<void(std::size_t, const RunRecord&)> on_record;
  /// Observers built per trial (e.g. state samplers); may be empty.
  std::function<std::vector<std::unique_ptr<RunObserver>>(std::size_t)> make_observers;
};

/// Engine configuration for trial k: t0, ell and a from params, step budget
/// ceil(t_end), seed trial_seed(base_seed, k).
SaConfig trial_config(const ScheduleParams& params, std::uint64_t base_seed, std::size_t k, TelemetryLevel telemetry);

/// Runs R seeded trajectories, each checked against the Kruskal optimum.
TrialReport run_trials(const Graph& g, const ScheduleParams& params, const TrialOptions& opts);

/// Wilson score interval at z = 1.96.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials);

/// 3-sigma binomial pass threshold (1 - delta) - 3 sqrt(delta (1 - delta) / R).
double pass_threshold(double delta, std::size_t trials);

/// ratio = tree / opt, snapped to 1 when below 1 only by rounding.
double approximation_ratio(double tree_weight, double opt_weight);

/// FNV-1a over the serialized instance, as 16 hex digits.
std::string instance_hash(const Graph& g);

inline constexpr const char* kRunCsvHeader =
    "trial,seed,steps,final_weight,opt_weight,ratio,success,heavy_violations,wall_ms";

/// Writes rows under kRunCsvHeader. `with_timing` false prints wall_ms as 0.
void write_trial_rows(std::ostream& out, const TrialReport& report, bool with_timing, const std::string& prefix = {});
/// Header, rows and a '#'-prefixed footer with aggregates and pass rule.
void write_trial_csv(std::ostream& out, const TrialReport& report, bool with_timing);
void write_trial_footer(std::ostream& out, const TrialReport& report);

/// Accepted-move telemetry CSV for one trial (no header).
inline constexpr const char* kTelemetryCsvHeader = "trial,step,edge,direction,delta_f,temperature";
void write_telemetry_rows(std::ostream& out, std::size_t trial, const RunRecord& record);

/// '#'-prefixed key=value lines carrying the schedule needed for replay,
/// followed by kTelemetryCsvHeader.
void write_telemetry_header(std::ostream& out, const ScheduleParams& params, std::size_t trials);

/// Parsed telemetry file: schedule echo plus per-trial accepted moves.
struct TelemetryLog {
  double t0 = 0.0;
  double ell = 0.0;
  double a = 0.0;
  double one_plus_kappa = 0.0;
  double gamma = 0.0;
  double t_base = 0.0;
  std::uint64_t steps = 0;
  std::vector<std::vector<AcceptedMove>> trials;
};

/// Throws Error(ParseError) or Error(TelemetryMissing) on a malformed log.
TelemetryLog read_telemetry(std::istream& in);

/// Rebuilds the full-telemetry RunRecord of one trial, starting from the
/// all-ones state.
RunRecord replay_trial(const Graph& g, const TelemetryLog& log, std::size_t trial);

}  // namespace samst
