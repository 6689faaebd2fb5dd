#include "samst/structure.hpp"

#include <cmath>

#include "samst/error.hpp"

namespace samst {

std::map<std::size_t, EdgeClass> classify_heavy_edges(const Graph& g, const EdgeSubset& x, double w, double kappa) {
  if (!x.connected()) throw Error(ErrorCode::DisconnectedState, "classification needs a connected solution");
  const double cheap = w / (1.0 + kappa);
  const auto edges = g.edges();
  std::map<std::size_t, EdgeClass> out;
  DisjointSets dsu(g.vertex_count());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!x.test(i) || edges[i].w < w) continue;
    dsu.reset(g.vertex_count());
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (j != i && x.test(j)) dsu.unite(edges[j].u, edges[j].v);
    }
    if (dsu.find(edges[i].u) == dsu.find(edges[i].v)) {
      out.emplace(i, EdgeClass{EdgeClass::Kind::OnCycle, std::nullopt});
      continue;
    }
    // Without edge i the solution splits into exactly two sides; any
    // non-selected edge across them closes a cycle through i.
    EdgeClass cls{EdgeClass::Kind::Essential, std::nullopt};
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (x.test(j) || edges[j].w > cheap) continue;
      if (dsu.find(edges[j].u) != dsu.find(edges[j].v)) {
        cls = EdgeClass{EdgeClass::Kind::RemovableViaCheapEdge, j};
        break;
      }
    }
    out.emplace(i, cls);
  }
  return out;
}

std::size_t count_essential(const Graph& g, const EdgeSubset& x, double w, double kappa) {
  std::size_t count = 0;
  for (const auto& [edge, cls] : classify_heavy_edges(g, x, w, kappa)) {
    if (cls.kind == EdgeClass::Kind::Essential) ++count;
  }
  return count;
}

std::size_t count_non_essential_heavy(const Graph& g, const EdgeSubset& x, double w, double kappa) {
  std::size_t count = 0;
  for (const auto& [edge, cls] : classify_heavy_edges(g, x, w, kappa)) {
    if (cls.kind != EdgeClass::Kind::Essential) ++count;
  }
  return count;
}

std::size_t essential_bound(const Graph& g, double w, double kappa) {
  // For kappa > 0 this is component_count_below(w / (1 + kappa)). At kappa = 0
  // an edge of weight exactly w would count as cheap and could hide the very
  // bridge being bounded, so cheap edges must also be strictly lighter than w.
  const double cheap = w / (1.0 + kappa);
  if (cheap < w) return component_count_below(g, cheap) - 1;
  DisjointSets dsu(g.vertex_count());
  for (const auto& e : g.edges()) {
    if (e.w < w && e.w <= cheap) dsu.unite(e.u, e.v);
  }
  return dsu.set_count() - 1;
}

DriftTrace drift_trace(const Graph& g, const RunRecord& record, const SaConfig& cfg, double a, double w, double kappa,
                       std::optional<std::size_t> max_epochs) {
  if (record.telemetry != TelemetryLevel::Full) {
    throw Error(ErrorCode::TelemetryMissing, "drift trace needs the full accepted-move stream");
  }
  DriftTrace trace;
  trace.w = w;
  trace.kappa = kappa;
  trace.t_w = freeze_out_step(cfg.t0, cfg.ell, a, w);
  trace.epoch_length = 2 * static_cast<std::uint64_t>(g.edge_count());

  EdgeSubset state = record.initial_state;
  std::size_t next_move = 0;
  bool censored = false;
  for (std::uint64_t start = trace.t_w; start <= record.steps_executed; start += trace.epoch_length) {
    if (max_epochs && trace.epochs.size() >= *max_epochs) break;
    while (next_move < record.moves.size() && record.moves[next_move].step < start) {
      const auto& mv = record.moves[next_move];
      state.toggle(g, mv.edge);
      if (mv.inserted && mv.step >= trace.t_w && g.weight(mv.edge) >= w) censored = true;
      ++next_move;
    }
    trace.epochs.push_back({trace.epochs.size(), start, count_non_essential_heavy(g, state, w, kappa),
                            temperature(cfg, start), censored});
  }
  return trace;
}

DriftEstimate estimate_drift(const DriftTrace& trace) {
  DriftEstimate est;
  for (std::size_t k = 0; k + 1 < trace.epochs.size(); ++k) {
    const auto& cur = trace.epochs[k];
    const auto& nxt = trace.epochs[k + 1];
    if (cur.censored || nxt.censored || cur.non_essential == 0) continue;
    const auto s = static_cast<double>(cur.non_essential);
    est.sum_relative_decrease += (s - static_cast<double>(nxt.non_essential)) / s;
    ++est.transitions;
  }
  return est;
}

double drift_rate_bound(double gamma, std::size_t n) {
  return (1.0 - std::exp(-3.0)) / (2.0 * gamma * static_cast<double>(n));
}

AuditReport heavy_edge_audit(const Graph& g, const RunRecord& record, double t0, double ell, double a) {
  AuditReport report;
  auto check = [&](std::uint64_t step, std::uint32_t edge, double temp) {
    const double w = g.weight(edge);
    ++report.inclusions_checked;
    const auto t_w = freeze_out_step(t0, ell, a, w);
    if (step >= t_w) report.violations.push_back({step, edge, w, temp, t_w});
  };
  if (record.telemetry == TelemetryLevel::Full) {
    for (const auto& mv : record.moves) {
      if (mv.inserted) check(mv.step, mv.edge, mv.temperature);
    }
  } else {
    for (const auto& h : record.heavy_inclusions) check(h.step, h.edge, h.temperature);
  }
  return report;
}

AuditReport heavy_edge_audit(const Graph& g, const RunRecord& record, const ScheduleParams& params) {
  return heavy_edge_audit(g, record, params.t0, params.ell, params.a);
}

}  // namespace samst
