#include "samst/annealer.hpp"

#include <cassert>
#include <cmath>
#include <limits>

#include "samst/error.hpp"
#include "samst/rng.hpp"

namespace samst {

void SaConfig::validate() const {
  if (!(t0 > 0.0) || !std::isfinite(t0)) throw Error(ErrorCode::InvalidConfig, "t0 must be finite and positive");
  if (!(ell > 2.0) || std::isnan(ell)) throw Error(ErrorCode::InvalidConfig, "ell must exceed 2");
  if (heavy_factor && !(*heavy_factor > 0.0)) throw Error(ErrorCode::InvalidConfig, "heavy factor must be positive");
}

double temperature(double t0, double ell, std::uint64_t t) {
  if (t == 0) return t0;
  return t0 * std::exp(static_cast<double>(t) * std::log1p(-1.0 / ell));
}

double acceptance_probability(double delta_f, double temp) {
  if (delta_f <= 0.0) return 1.0;
  if (std::isinf(delta_f)) return 0.0;
  return std::exp(-delta_f / temp);
}

RunRecord run(const Graph& g, const SaConfig& cfg, std::span<RunObserver* const> observers) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();

  EdgeSubset x = cfg.initial_bits ? EdgeSubset::from_bits(g, *cfg.initial_bits) : EdgeSubset::all_ones(g);
  if (!x.connected()) throw Error(ErrorCode::InvalidConfig, "initial state must be connected");

  RunRecord rec(x);
  rec.telemetry = cfg.telemetry;
  for (auto* obs : observers) obs->on_start(g, x);

  const std::uint64_t m = g.edge_count();
  const double log_beta = std::log1p(-1.0 / cfg.ell);
  const bool full = cfg.telemetry == TelemetryLevel::Full;
  const bool track_heavy = cfg.heavy_factor.has_value() && cfg.telemetry != TelemetryLevel::None;
  const double a = cfg.heavy_factor.value_or(0.0);

  Rng rng(cfg.seed);
  DisjointSets scratch(g.vertex_count());
  std::uint64_t t = 0;
  bool stop = false;
  for (; t < cfg.max_steps && !stop; ++t) {
    const double temp = t == 0 ? cfg.t0 : cfg.t0 * std::exp(static_cast<double>(t) * log_beta);
    const auto i = static_cast<std::size_t>(rng.uniform_index(m));
    const bool inserting = !x.test(i);
    const double w = g.weight(i);

    double delta = inserting ? w : -w;
    if (!inserting && x.removal_disconnects(g, i, scratch)) {
      delta = std::numeric_limits<double>::infinity();
    }

    const double p = acceptance_probability(delta, temp);
    bool accept = false;
    if (p >= 1.0) {
      accept = true;
      if (delta < 0.0) {
        ++rec.counts.improving;
      } else {
        ++rec.counts.equal;
      }
    } else if (p <= 0.0 && std::isinf(delta)) {
      ++rec.counts.infeasible_rejected;
    } else if (rng.uniform01() < p) {
      accept = true;
      ++rec.counts.worsening_accepted;
    } else {
      ++rec.counts.worsening_rejected;
    }
    if (!accept) continue;

    x.toggle(g, i);
    assert(x.connected());
    const AcceptedMove move{t, static_cast<std::uint32_t>(i), inserting, delta, temp};
    if (full) rec.moves.push_back(move);
    if (track_heavy && inserting && temp <= w / a) {
      rec.heavy_inclusions.push_back({t, static_cast<std::uint32_t>(i), w, temp});
    }
    for (auto* obs : observers) {
      if (!obs->on_accepted(move, x)) stop = true;
    }
  }

  rec.steps_executed = t;
  rec.final_fitness = fitness(g, x);
  rec.final_state = std::move(x);
  rec.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - started);
  return rec;
}

}  // namespace samst
