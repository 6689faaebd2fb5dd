#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "samst/annealer.hpp"
#include "samst/graph.hpp"
#include "samst/params.hpp"

namespace samst {

/// Role of a selected edge of weight >= w in a connected solution x.
struct EdgeClass {
  enum class Kind {
    OnCycle,                ///< lies on a cycle of (V, E(x))
    RemovableViaCheapEdge,  ///< a non-selected edge of weight <= w/(1+kappa) closes a cycle through it
    Essential,              ///< neither; stays a bridge while no heavy edge is added
  };
  Kind kind = Kind::Essential;
  /// Lowest-index cheap reconnecting edge, for RemovableViaCheapEdge.
  std::optional<std::size_t> witness;

  friend bool operator==(const EdgeClass&, const EdgeClass&) = default;
};

/// Classifies every selected edge with weight >= w. Throws
/// Error(DisconnectedState) when x is not connected.
std::map<std::size_t, EdgeClass> classify_heavy_edges(const Graph& g, const EdgeSubset& x, double w, double kappa);

std::size_t count_essential(const Graph& g, const EdgeSubset& x, double w, double kappa);

/// Number of selected edges with weight >= w that are not essential.
std::size_t count_non_essential_heavy(const Graph& g, const EdgeSubset& x, double w, double kappa);

/// n_w - 1 where n_w counts components of the subgraph of edges <= w/(1+kappa)
/// (and < w, which only matters at kappa = 0).
std::size_t essential_bound(const Graph& g, double w, double kappa);

struct DriftEpoch {
  std::size_t epoch = 0;
  std::uint64_t start_step = 0;
  std::size_t non_essential = 0;
  double temperature = 0.0;
  /// A weight->=w edge was inserted at or after the freeze-out step and
  /// before this epoch began.
  bool censored = false;

  friend bool operator==(const DriftEpoch&, const DriftEpoch&) = default;
};

/// Non-essential heavy-edge counts X_t at epoch boundaries t_w + k * 2m.
struct DriftTrace {
  double w = 0.0;
  double kappa = 0.0;
  std::uint64_t t_w = 0;
  std::uint64_t epoch_length = 0;
  std::vector<DriftEpoch> epochs;
};

struct DriftEstimate {
  double sum_relative_decrease = 0.0;
  std::size_t transitions = 0;

  double mean() const noexcept { return transitions == 0 ? 0.0 : sum_relative_decrease / static_cast<double>(transitions); }
  DriftEstimate& operator+=(const DriftEstimate& o) noexcept {
    sum_relative_decrease += o.sum_relative_decrease;
    transitions += o.transitions;
    return *this;
  }
};

/// Replays the accepted-move telemetry of `record` (needs TelemetryLevel::Full)
/// and samples X_t at every epoch boundary from the freeze-out step of w.
/// `max_epochs` limits the trace length. Throws Error(TelemetryMissing).
DriftTrace drift_trace(const Graph& g, const RunRecord& record, const SaConfig& cfg, double a, double w, double kappa,
                       std::optional<std::size_t> max_epochs = std::nullopt);

/// Mean of (X_k - X_{k+1}) / X_k over consecutive uncensored epochs with X_k > 0.
DriftEstimate estimate_drift(const DriftTrace& trace);

/// Per-epoch relative drift lower bound (1 - e^-3) / (2 gamma n).
double drift_rate_bound(double gamma, std::size_t n);

struct AuditViolation {
  std::uint64_t step = 0;
  std::uint32_t edge = 0;
  double weight = 0.0;
  double temperature = 0.0;
  std::uint64_t t_w = 0;
};

struct AuditReport {
  std::size_t inclusions_checked = 0;
  std::vector<AuditViolation> violations;

  bool clean() const noexcept { return violations.empty(); }
};

/// Flags every accepted inclusion of an edge of weight w at a step t >= t_w,
/// t_w being the first step with T_t <= w / a. Uses the full move stream when
/// present, otherwise the recorded heavy inclusions.
AuditReport heavy_edge_audit(const Graph& g, const RunRecord& record, double t0, double ell, double a);
AuditReport heavy_edge_audit(const Graph& g, const RunRecord& record, const ScheduleParams& params);

}  // namespace samst
