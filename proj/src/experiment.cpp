#include "samst/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "samst/error.hpp"
#include "samst/instance_io.hpp"
#include "samst/mst_oracle.hpp"
#include "samst/rng.hpp"
#include "samst/structure.hpp"

namespace samst {

SaConfig trial_config(const ScheduleParams& params, std::uint64_t base_seed, std::size_t k, TelemetryLevel telemetry) {
  SaConfig cfg;
  cfg.t0 = params.t0;
  cfg.ell = params.ell;
  cfg.max_steps = params.step_budget();
  cfg.seed = trial_seed(base_seed, k);
  cfg.telemetry = telemetry;
  cfg.heavy_factor = params.a;
  return cfg;
}

double approximation_ratio(double tree_weight, double opt_weight) {
  const double r = tree_weight / opt_weight;
  if (r < 1.0 && r > 1.0 - 1e-12) return 1.0;
  return r;
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double r = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / r;
  const double denom = 1.0 + z * z / r;
  const double center = (p + z * z / (2.0 * r)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / r + z * z / (4.0 * r * r));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double pass_threshold(double delta, std::size_t trials) {
  return (1.0 - delta) - 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
}

std::string instance_hash(const Graph& g) {
  std::ostringstream text;
  write_instance(text, g);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text.str()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TrialReport run_trials(const Graph& g, const ScheduleParams& params, const TrialOptions& opts) {
  if (opts.trials == 0) throw Error(ErrorCode::InvalidConfig, "need at least one trial");
  TrialReport report;
  report.instance_hash = instance_hash(g);
  report.params = params;
  report.trials = opts.trials;
  report.base_seed = opts.base_seed;
  report.target_ratio = opts.target_ratio;
  report.require_optimal = opts.require_optimal;
  report.rows.resize(opts.trials);

  const double opt = kruskal_mst(g).weight;

  std::mutex mu;
  std::vector<std::optional<RunRecord>> pending(opts.on_record ? opts.trials : 0);
  std::size_t next_flush = 0;
  std::atomic<std::size_t> next_trial{0};
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next_trial.fetch_add(1);
      if (k >= opts.trials) return;
      try {
        const SaConfig cfg = trial_config(params, opts.base_seed, k, opts.telemetry);
        std::vector<std::unique_ptr<RunObserver>> owned;
        if (opts.make_observers) owned = opts.make_observers(k);
        std::vector<RunObserver*> observers;
        for (auto& o : owned) observers.push_back(o.get());

        RunRecord rec = run(g, cfg, observers);
        TrialRow row;
        row.trial = k;
        row.seed = cfg.seed;
        row.steps = rec.steps_executed;
        row.final_weight = rec.final_fitness.value();
        row.opt_weight = opt;
        row.ratio = approximation_ratio(row.final_weight, opt);
        row.success = opts.require_optimal ? std::abs(row.final_weight - opt) <= 1e-12 * opt
                                           : row.ratio <= opts.target_ratio;
        row.heavy_violations = heavy_edge_audit(g, rec, params).violations.size();
        row.wall_ms = std::chrono::duration<double, std::milli>(rec.wall_time).count();
        report.rows[k] = row;

        if (opts.on_record) {
          std::lock_guard lock(mu);
          pending[k] = std::move(rec);
          while (next_flush < opts.trials && pending[next_flush]) {
            opts.on_record(next_flush, *pending[next_flush]);
            pending[next_flush].reset();
            ++next_flush;
          }
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next_trial = opts.trials;
        return;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(opts.trials)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  auto& agg = report.aggregates;
  double ratio_sum = 0.0;
  for (const auto& row : report.rows) {
    if (row.success) ++agg.successes;
    if (row.heavy_violations > 0) ++agg.trials_with_violations;
    ratio_sum += row.ratio;
    agg.max_ratio = std::max(agg.max_ratio, row.ratio);
  }
  const auto r = static_cast<double>(opts.trials);
  agg.success_rate = static_cast<double>(agg.successes) / r;
  agg.mean_ratio = ratio_sum / r;
  std::tie(agg.wilson_lo, agg.wilson_hi) = wilson_interval(agg.successes, opts.trials);
  report.pass_threshold = pass_threshold(params.delta, opts.trials);
  report.passed = agg.success_rate >= report.pass_threshold;
  return report;
}

void write_trial_rows(std::ostream& out, const TrialReport& report, bool with_timing, const std::string& prefix) {
  for (const auto& row : report.rows) {
    out << prefix << row.trial << ',' << row.seed << ',' << row.steps << ',' << format_double(row.final_weight) << ','
        << format_double(row.opt_weight) << ',' << format_double(row.ratio) << ',' << (row.success ? 1 : 0) << ','
        << row.heavy_violations << ',' << (with_timing ? format_double(std::round(row.wall_ms * 1000.0) / 1000.0) : "0")
        << '\n';
  }
}

void write_trial_footer(std::ostream& out, const TrialReport& report) {
  const auto& agg = report.aggregates;
  const auto& p = report.params;
  out << "# instance=" << report.instance_hash << " trials=" << report.trials << " base_seed=" << report.base_seed
      << '\n';
  out << "# ell=" << format_double(p.ell) << " a=" << format_double(p.a) << " t0=" << format_double(p.t0)
      << " t_end=" << format_double(p.t_end) << " one_plus_kappa=" << format_double(p.one_plus_kappa) << '\n';
  out << "# target=" << (report.require_optimal ? std::string("optimal") : format_double(report.target_ratio))
      << " successes=" << agg.successes << " success_rate=" << format_double(agg.success_rate) << " wilson95=["
      << format_double(agg.wilson_lo) << ',' << format_double(agg.wilson_hi) << "]"
      << " mean_ratio=" << format_double(agg.mean_ratio) << " max_ratio=" << format_double(agg.max_ratio)
      << " trials_with_heavy_violations=" << agg.trials_with_violations << '\n';
  out << "# pass rule: success_rate >= (1-delta) - 3*sqrt(delta*(1-delta)/R) = " << format_double(report.pass_threshold)
      << " -> " << (report.passed ? "PASS" : "FAIL") << '\n';
}

void write_trial_csv(std::ostream& out, const TrialReport& report, bool with_timing) {
  out << kRunCsvHeader << '\n';
  write_trial_rows(out, report, with_timing);
  write_trial_footer(out, report);
}

void write_telemetry_rows(std::ostream& out, std::size_t trial, const RunRecord& record) {
  for (const auto& mv : record.moves) {
    out << trial << ',' << mv.step << ',' << mv.edge << ',' << (mv.inserted ? "in" : "out") << ','
        << format_double(mv.delta_f) << ',' << format_double(mv.temperature) << '\n';
  }
}

}  // namespace samst

namespace samst {

void write_telemetry_header(std::ostream& out, const ScheduleParams& params, std::size_t trials) {
  out << "# samst telemetry v1\n";
  out << "# t0=" << format_double(params.t0) << '\n';
  out << "# ell=" << format_double(params.ell) << '\n';
  out << "# a=" << format_double(params.a) << '\n';
  out << "# one_plus_kappa=" << format_double(params.one_plus_kappa) << '\n';
  out << "# gamma=" << format_double(params.gamma) << '\n';
  out << "# t_base=" << format_double(params.t_base) << '\n';
  out << "# steps=" << params.step_budget() << '\n';
  out << "# trials=" << trials << '\n';
  out << kTelemetryCsvHeader << '\n';
}

namespace {

template <typename T>
T parse_field(std::string_view token, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::ParseError, "telemetry line " + std::to_string(line_no) + ": bad field '" +
                                           std::string(token) + "'");
  }
  return value;
}

}  // namespace

TelemetryLog read_telemetry(std::istream& in) {
  TelemetryLog log;
  std::string line;
  std::size_t line_no = 0;
  std::size_t declared_trials = 0;
  bool have_steps = false;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const auto key = std::string_view(line).substr(2, eq - 2);
      const auto val = std::string_view(line).substr(eq + 1);
      if (key == "t0") log.t0 = parse_field<double>(val, line_no);
      else if (key == "ell") log.ell = parse_field<double>(val, line_no);
      else if (key == "a") log.a = parse_field<double>(val, line_no);
      else if (key == "one_plus_kappa") log.one_plus_kappa = parse_field<double>(val, line_no);
      else if (key == "gamma") log.gamma = parse_field<double>(val, line_no);
      else if (key == "t_base") log.t_base = parse_field<double>(val, line_no);
      else if (key == "steps") {
        log.steps = parse_field<std::uint64_t>(val, line_no);
        have_steps = true;
      } else if (key == "trials") {
        declared_trials = parse_field<std::size_t>(val, line_no);
        log.trials.resize(declared_trials);
      }
      continue;
    }
    if (line == kTelemetryCsvHeader) {
      have_header = true;
      continue;
    }
    if (!have_header) throw Error(ErrorCode::ParseError, "telemetry line " + std::to_string(line_no) + ": missing CSV header");
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
      f.push_back(rest.substr(0, pos));
    }
    f.push_back(rest);
    if (f.size() != 6) throw Error(ErrorCode::ParseError, "telemetry line " + std::to_string(line_no) + ": expected 6 fields");
    const auto trial = parse_field<std::size_t>(f[0], line_no);
    if (trial >= log.trials.size()) {
      throw Error(ErrorCode::ParseError, "telemetry line " + std::to_string(line_no) + ": trial index out of range");
    }
    if (f[3] != "in" && f[3] != "out") {
      throw Error(ErrorCode::ParseError, "telemetry line " + std::to_string(line_no) + ": direction must be in/out");
    }
    AcceptedMove mv;
    mv.step = parse_field<std::uint64_t>(f[1], line_no);
    mv.edge = parse_field<std::uint32_t>(f[2], line_no);
    mv.inserted = f[3] == "in";
    mv.delta_f = parse_field<double>(f[4], line_no);
    mv.temperature = parse_field<double>(f[5], line_no);
    log.trials[trial].push_back(mv);
  }
  if (!have_steps || declared_trials == 0 || !(log.t0 > 0.0) || !(log.ell > 0.0) || !(log.a > 0.0)) {
    throw Error(ErrorCode::TelemetryMissing, "telemetry header lacks t0/ell/a/steps/trials");
  }
  return log;
}

// Rejected proposals are not logged, so the acceptance counts of a replayed
// record stay zero.
RunRecord replay_trial(const Graph& g, const TelemetryLog& log, std::size_t trial) {
  if (trial >= log.trials.size()) throw Error(ErrorCode::IndexOutOfRange, "trial " + std::to_string(trial));
  auto state = EdgeSubset::all_ones(g);
  RunRecord rec(state);
  rec.telemetry = TelemetryLevel::Full;
  rec.steps_executed = log.steps;
  rec.moves = log.trials[trial];
  for (const auto& mv : rec.moves) {
    if (mv.edge >= g.edge_count()) throw Error(ErrorCode::IndexOutOfRange, "telemetry edge index out of range");
    if (mv.inserted == state.test(mv.edge)) {
      throw Error(ErrorCode::ParseError, "telemetry move at step " + std::to_string(mv.step) + " contradicts the replayed state");
    }
    state.toggle(g, mv.edge);
    if (mv.inserted && mv.temperature <= g.weight(mv.edge) / log.a) {
      rec.heavy_inclusions.push_back({mv.step, mv.edge, g.weight(mv.edge), mv.temperature});
    }
  }
  rec.final_fitness = fitness(g, state);
  rec.final_state = std::move(state);
  return rec;
}

}  // namespace samst
