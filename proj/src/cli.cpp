#include "samst/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "samst/error.hpp"
#include "samst/experiment.hpp"
#include "samst/instance_gen.hpp"
#include "samst/instance_io.hpp"
#include "samst/mst_oracle.hpp"
#include "samst/params.hpp"
#include "samst/structure.hpp"

namespace samst::cli {
namespace {

using nlohmann::json;

/// Refuse batches above this many elementary steps unless --force.
constexpr double kStepGuardrail = 1e10;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::uint64_t seed = 1;
  bool json = false;
  std::string output;
  unsigned threads = 1;
  bool force = false;
};

struct ScheduleOptions {
  double eps = 1.0;
  double delta = 0.1;
  bool abstract_delta = false;
  std::optional<double> ell;
  std::optional<double> a;
  std::optional<double> t0;
  std::string budget = "bound";
};

void add_schedule_options(CLI::App* cmd, ScheduleOptions& s) {
  cmd->add_option("--eps", s.eps, "target approximation slack eps > 0")->capture_default_str();
  cmd->add_option("--delta", s.delta, "failure probability in (0,1)")->capture_default_str();
  cmd->add_flag("--abstract-delta", s.abstract_delta, "use delta = 1/m");
  cmd->add_option("--ell", s.ell, "override the cooling parameter (beta = 1 - 1/ell)");
  cmd->add_option("--a", s.a, "override the freeze-out factor a");
  cmd->add_option("--t0", s.t0, "starting temperature (default w_max)");
  cmd->add_option("--budget", s.budget, "step budget: bound = (ell/2) ln(a t0/w_min), exact = true freeze-out step")
      ->check(CLI::IsMember({"bound", "exact"}))
      ->capture_default_str();
}

ScheduleParams schedule_for(const Graph& g, const ScheduleOptions& s) {
  ScheduleInputs in;
  in.m = g.edge_count();
  in.n = g.vertex_count();
  in.delta = s.abstract_delta ? 1.0 / static_cast<double>(g.edge_count()) : s.delta;
  in.eps = s.eps;
  in.w_min = g.w_min();
  in.w_max = g.w_max();
  in.t0 = s.t0.value_or(g.w_max());
  in.ell = s.ell;
  in.a = s.a;
  auto p = derive_schedule(in);
  p.budget_exact = s.budget == "exact";
  return p;
}

json params_json(const ScheduleParams& p) {
  json warnings = json::array();
  for (const auto& w : p.warnings) warnings.push_back({{"code", w.code}, {"message", w.message}});
  return {{"m", p.m},
          {"n", p.n},
          {"delta", p.delta},
          {"eps", p.eps},
          {"ell", p.ell},
          {"beta", p.beta()},
          {"a", p.a},
          {"t_base", p.t_base},
          {"b", p.b},
          {"gamma", p.gamma},
          {"one_plus_kappa", p.one_plus_kappa},
          {"t_end", p.t_end},
          {"t_end_exact", p.t_end_exact},
          {"t0", p.t0},
          {"w_min", p.w_min},
          {"w_max", p.w_max},
          {"in_regime", p.in_regime},
          {"warnings", warnings}};
}

void print_params_table(std::ostream& out, const ScheduleParams& p) {
  auto row = [&](const char* name, const std::string& value) {
    out << std::left << std::setw(16) << name << value << '\n';
  };
  row("quantity", "value");
  row("m", std::to_string(p.m));
  row("n", std::to_string(p.n));
  row("delta", format_double(p.delta));
  row("eps", format_double(p.eps));
  row("ell", format_double(p.ell));
  row("beta", format_double(p.beta()));
  row("a", format_double(p.a));
  row("T_base", format_double(p.t_base));
  row("b", format_double(p.b));
  row("gamma*", format_double(p.gamma));
  row("1+kappa", format_double(p.one_plus_kappa));
  row("t_end", format_double(p.t_end));
  row("t_end_exact", format_double(p.t_end_exact));
  row("t0", format_double(p.t0));
  row("w_min", format_double(p.w_min));
  row("w_max", format_double(p.w_max));
  row("in_regime", p.in_regime ? "yes" : "no");
}

json report_json(const TrialReport& r, bool with_timing) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"trial", row.trial},
                    {"seed", row.seed},
                    {"steps", row.steps},
                    {"final_weight", row.final_weight},
                    {"opt_weight", row.opt_weight},
                    {"ratio", row.ratio},
                    {"success", row.success},
                    {"heavy_violations", row.heavy_violations},
                    {"wall_ms", with_timing ? row.wall_ms : 0.0}});
  }
  const auto& agg = r.aggregates;
  return {{"config",
           {{"instance_hash", r.instance_hash},
            {"params", params_json(r.params)},
            {"trials", r.trials},
            {"base_seed", r.base_seed},
            {"target_ratio", r.target_ratio},
            {"require_optimal", r.require_optimal}}},
          {"rows", rows},
          {"aggregates",
           {{"successes", agg.successes},
            {"success_rate", agg.success_rate},
            {"mean_ratio", agg.mean_ratio},
            {"max_ratio", agg.max_ratio},
            {"wilson95", {agg.wilson_lo, agg.wilson_hi}},
            {"trials_with_heavy_violations", agg.trials_with_violations}}},
          {"pass_threshold", r.pass_threshold},
          {"passed", r.passed}};
}

void warn_params(std::ostream& err, const ScheduleParams& p) {
  for (const auto& w : p.warnings) err << "warning: " << w.code << ": " << w.message << '\n';
}

void check_budget(const ScheduleParams& p, std::size_t trials, bool force) {
  const double total = static_cast<double>(trials) * static_cast<double>(p.step_budget());
  if (total > kStepGuardrail && !force) {
    std::ostringstream msg;
    msg << "batch needs " << format_double(total) << " annealing steps (limit " << format_double(kStepGuardrail)
        << "); pass --force to run anyway";
    throw UsageError(msg.str());
  }
}

/// Destination stream: --output file or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file " + path);
    }
    out_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& get() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

TrialOptions base_trial_options(const GlobalOptions& global, std::size_t trials) {
  TrialOptions opts;
  opts.trials = trials;
  opts.base_seed = global.seed;
  opts.threads = global.threads;
  return opts;
}

int emit_report(const GlobalOptions& global, const TrialReport& report, bool no_timing, std::ostream& out) {
  Sink sink(global.output, out);
  if (global.json) {
    sink.get() << report_json(report, !no_timing).dump(2) << '\n';
  } else {
    write_trial_csv(sink.get(), report, !no_timing);
  }
  return report.passed ? kExitPass : kExitFail;
}

std::vector<double> default_probes(const Graph& g) {
  auto sorted = sorted_weights(g, kruskal_mst(g).tree).values;
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return sorted;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulated annealing for minimum spanning trees: schedules, oracles, trials"};
  app.name(args.empty() ? "samst" : args[0]);
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "top-level seed")->capture_default_str();
  app.add_flag("--json", global.json, "JSON output");
  app.add_option("--output", global.output, "write the report to this file");
  app.add_option("--threads", global.threads, "worker threads for trial batches")->capture_default_str();
  app.add_flag("--force", global.force, "skip the step-budget guardrail");

  // params
  auto* params_cmd = app.add_subcommand("params", "print derived schedule quantities");
  ScheduleOptions params_sched;
  std::size_t p_m = 0;
  std::size_t p_n = 0;
  double p_wmin = 1.0;
  double p_wmax = 1.0;
  std::string p_instance;
  add_schedule_options(params_cmd, params_sched);
  params_cmd->add_option("--m", p_m, "edge count");
  params_cmd->add_option("--n", p_n, "vertex count");
  params_cmd->add_option("--w-min", p_wmin, "minimum edge weight")->capture_default_str();
  params_cmd->add_option("--w-max", p_wmax, "maximum edge weight")->capture_default_str();
  params_cmd->add_option("--instance", p_instance, "take m, n, w_min, w_max from an instance file");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  GenSpec gen_spec;
  std::string family_name = "uniform";
  gen_cmd->add_option("--family", family_name, "uniform | separated | tree-plus | complete")->capture_default_str();
  gen_cmd->add_option("--n", gen_spec.n, "vertex count")->required();
  gen_cmd->add_option("--m", gen_spec.m, "edge count (ignored for complete)");
  gen_cmd->add_option("--eps", gen_spec.eps, "separation factor")->capture_default_str();
  gen_cmd->add_option("--w-lo", gen_spec.w_lo, "lowest weight")->capture_default_str();
  gen_cmd->add_option("--w-hi", gen_spec.w_hi, "highest weight")->capture_default_str();
  gen_cmd->add_option("--levels", gen_spec.levels, "weight levels (separated)")->capture_default_str();

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exact MST weight and sorted weight vector");
  std::string oracle_instance;
  oracle_cmd->add_option("instance", oracle_instance, "instance file")->required();

  // run
  auto* run_cmd = app.add_subcommand("run", "batch of seeded annealing trials");
  std::string run_instance;
  std::size_t run_trials_n = 100;
  std::string telemetry_path;
  bool run_no_timing = false;
  ScheduleOptions run_sched;
  run_cmd->add_option("instance", run_instance, "instance file")->required();
  run_cmd->add_option("--trials", run_trials_n, "number of trials R")->capture_default_str();
  run_cmd->add_option("--telemetry", telemetry_path, "write accepted-move telemetry CSV here");
  run_cmd->add_flag("--no-timing", run_no_timing, "print wall_ms as 0 for byte-stable output");
  add_schedule_options(run_cmd, run_sched);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "trial batches over a list of eps or ell values");
  std::string sweep_instance;
  std::vector<double> eps_list;
  std::vector<double> ell_list;
  std::size_t sweep_trials = 50;
  bool sweep_no_timing = false;
  ScheduleOptions sweep_sched;
  sweep_cmd->add_option("instance", sweep_instance, "instance file")->required();
  auto* eps_opt = sweep_cmd->add_option("--eps-list", eps_list, "eps values")->delimiter(',');
  auto* ell_opt = sweep_cmd->add_option("--ell-list", ell_list, "ell values")->delimiter(',');
  eps_opt->excludes(ell_opt);
  sweep_cmd->add_option("--trials", sweep_trials, "trials per point")->capture_default_str();
  sweep_cmd->add_option("--delta", sweep_sched.delta, "failure probability")->capture_default_str();
  sweep_cmd->add_option("--eps", sweep_sched.eps, "eps used for an ell sweep's ell-free quantities")->capture_default_str();
  sweep_cmd->add_option("--t0", sweep_sched.t0, "starting temperature (default w_max)");
  sweep_cmd->add_flag("--no-timing", sweep_no_timing, "print wall_ms as 0");

  // separated
  auto* sep_cmd = app.add_subcommand("separated", "optimality trials on a (1+eps)-separated instance");
  std::string sep_instance;
  std::size_t sep_trials = 100;
  bool sep_no_timing = false;
  ScheduleOptions sep_sched;
  sep_sched.budget = "exact";
  sep_cmd->add_option("instance", sep_instance, "instance file")->required();
  sep_cmd->add_option("--trials", sep_trials, "number of trials R")->capture_default_str();
  sep_cmd->add_flag("--no-timing", sep_no_timing, "print wall_ms as 0");
  add_schedule_options(sep_cmd, sep_sched);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "replay telemetry: heavy-edge audit and drift trace");
  std::string verify_instance;
  std::string verify_telemetry;
  std::vector<double> probes;
  std::optional<std::size_t> max_epochs;
  verify_cmd->add_option("instance", verify_instance, "instance file")->required();
  verify_cmd->add_option("--telemetry", verify_telemetry, "telemetry CSV written by run")->required();
  verify_cmd->add_option("--probe", probes, "probe weights w for the drift trace (default: distinct MST weights)");
  verify_cmd->add_option("--max-epochs", max_epochs, "epochs per trace (default: gamma*T_base/(2m))");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (params_cmd->parsed()) {
      ScheduleInputs in;
      if (!p_instance.empty()) {
        const auto g = read_instance_file(p_instance);
        in.m = g.edge_count();
        in.n = g.vertex_count();
        in.w_min = g.w_min();
        in.w_max = g.w_max();
      } else {
        if (p_m == 0 || p_n == 0) throw UsageError("params needs --m and --n, or --instance");
        in.m = p_m;
        in.n = p_n;
        in.w_min = p_wmin;
        in.w_max = p_wmax;
      }
      in.delta = params_sched.abstract_delta ? 1.0 / static_cast<double>(in.m) : params_sched.delta;
      in.eps = params_sched.eps;
      in.t0 = params_sched.t0.value_or(in.w_max);
      in.ell = params_sched.ell;
      in.a = params_sched.a;
      const auto p = derive_schedule(in);
      warn_params(err, p);
      Sink sink(global.output, out);
      if (global.json) {
        sink.get() << params_json(p).dump(2) << '\n';
      } else {
        print_params_table(sink.get(), p);
      }
      return kExitPass;
    }

    if (gen_cmd->parsed()) {
      const auto fam = parse_family(family_name);
      if (!fam) throw UsageError("unknown family '" + family_name + "'");
      gen_spec.family = *fam;
      gen_spec.seed = global.seed;
      const auto g = generate(gen_spec);
      Sink sink(global.output, out);
      write_instance(sink.get(), g, describe(gen_spec));
      return kExitPass;
    }

    if (oracle_cmd->parsed()) {
      const auto g = read_instance_file(oracle_instance);
      const auto mst = kruskal_mst(g);
      const auto sw = sorted_weights(g, mst.tree);
      Sink sink(global.output, out);
      if (global.json) {
        sink.get() << json{{"mst_weight", mst.weight}, {"sorted_weights", sw.values}, {"edges", mst.tree.selected_edges()}}
                          .dump(2)
                   << '\n';
      } else {
        sink.get() << "mst_weight " << format_double(mst.weight) << '\n' << "sorted_weights";
        for (double w : sw.values) sink.get() << ' ' << format_double(w);
        sink.get() << '\n' << "edges";
        for (auto i : mst.tree.selected_edges()) sink.get() << ' ' << i;
        sink.get() << '\n';
      }
      return kExitPass;
    }

    if (run_cmd->parsed() || sep_cmd->parsed()) {
      const bool separated = sep_cmd->parsed();
      const auto& sched = separated ? sep_sched : run_sched;
      const auto g = read_instance_file(separated ? sep_instance : run_instance);
      const std::size_t trials = separated ? sep_trials : run_trials_n;
      if (trials == 0) throw UsageError("--trials must be at least 1");
      if (separated && !check_separated(g, sched.eps)) {
        throw Error(ErrorCode::NotSeparated, "instance weights are not (1+eps)-separated for eps=" + format_double(sched.eps));
      }
      const auto p = schedule_for(g, sched);
      warn_params(err, p);
      check_budget(p, trials, global.force);

      auto opts = base_trial_options(global, trials);
      opts.target_ratio = 1.0 + sched.eps;
      opts.require_optimal = separated;
      std::ofstream telemetry;
      if (!separated && !telemetry_path.empty()) {
        telemetry.open(telemetry_path, std::ios::binary);
        if (!telemetry) throw UsageError("cannot open telemetry file " + telemetry_path);
        write_telemetry_header(telemetry, p, trials);
        opts.telemetry = TelemetryLevel::Full;
        opts.on_record = [&](std::size_t k, const RunRecord& rec) { write_telemetry_rows(telemetry, k, rec); };
      }
      const auto report = run_trials(g, p, opts);
      return emit_report(global, report, separated ? sep_no_timing : run_no_timing, out);
    }

    if (sweep_cmd->parsed()) {
      const bool by_eps = !eps_list.empty();
      const auto& points = by_eps ? eps_list : ell_list;
      if (points.size() < 2) throw UsageError("sweep needs at least two points in --eps-list or --ell-list");
      const auto g = read_instance_file(sweep_instance);
      std::vector<ScheduleParams> schedules;
      double total_steps = 0.0;
      for (double v : points) {
        ScheduleOptions s = sweep_sched;
        if (by_eps) {
          s.eps = v;
        } else {
          s.ell = v;
        }
        schedules.push_back(schedule_for(g, s));
        warn_params(err, schedules.back());
        total_steps += static_cast<double>(sweep_trials) * static_cast<double>(schedules.back().step_budget());
      }
      if (total_steps > kStepGuardrail && !global.force) {
        throw UsageError("sweep needs " + format_double(total_steps) + " annealing steps; pass --force to run anyway");
      }
      Sink sink(global.output, out);
      auto& os = sink.get();
      json all = json::array();
      if (!global.json) os << "sweep_param,sweep_value,ell,one_plus_kappa,t_end," << kRunCsvHeader << '\n';
      bool all_passed = true;
      std::ostringstream footer;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = schedules[i];
        auto opts = base_trial_options(global, sweep_trials);
        opts.target_ratio = by_eps ? 1.0 + points[i] : p.one_plus_kappa;
        const auto report = run_trials(g, p, opts);
        all_passed = all_passed && report.passed;
        if (global.json) {
          auto j = report_json(report, !sweep_no_timing);
          j["sweep_param"] = by_eps ? "eps" : "ell";
          j["sweep_value"] = points[i];
          all.push_back(std::move(j));
        } else {
          const std::string prefix = std::string(by_eps ? "eps" : "ell") + ',' + format_double(points[i]) + ',' +
                                     format_double(p.ell) + ',' + format_double(p.one_plus_kappa) + ',' +
                                     format_double(p.t_end) + ',';
          write_trial_rows(os, report, !sweep_no_timing, prefix);
          footer << "# point " << (by_eps ? "eps" : "ell") << '=' << format_double(points[i])
                 << " one_plus_kappa=" << format_double(p.one_plus_kappa)
                 << " success_rate=" << format_double(report.aggregates.success_rate)
                 << " max_ratio=" << format_double(report.aggregates.max_ratio)
                 << " passed=" << (report.passed ? 1 : 0) << '\n';
        }
      }
      if (global.json) {
        os << all.dump(2) << '\n';
      } else {
        os << footer.str();
      }
      return all_passed ? kExitPass : kExitFail;
    }

    if (verify_cmd->parsed()) {
      const auto g = read_instance_file(verify_instance);
      std::ifstream tin(verify_telemetry, std::ios::binary);
      if (!tin) throw UsageError("cannot open telemetry file " + verify_telemetry);
      const auto log = read_telemetry(tin);
      if (probes.empty()) probes = default_probes(g);
      const double kappa = log.one_plus_kappa - 1.0;
      SaConfig cfg;
      cfg.t0 = log.t0;
      cfg.ell = log.ell;
      std::optional<std::size_t> epochs = max_epochs;
      if (!epochs && log.gamma > 0.0 && log.t_base > 0.0) {
        epochs = static_cast<std::size_t>(std::ceil(log.gamma * log.t_base / (2.0 * static_cast<double>(g.edge_count())))) + 1;
      }

      Sink sink(global.output, out);
      auto& os = sink.get();
      std::ostringstream drift;
      os << "trial,step,edge,weight,temperature,t_w\n";
      drift << "trial,w,epoch,start_step,non_essential,temperature,censored\n";
      std::size_t inclusions = 0;
      std::size_t violations = 0;
      std::size_t dirty_trials = 0;
      for (std::size_t k = 0; k < log.trials.size(); ++k) {
        const auto rec = replay_trial(g, log, k);
        const auto audit = heavy_edge_audit(g, rec, log.t0, log.ell, log.a);
        inclusions += audit.inclusions_checked;
        violations += audit.violations.size();
        if (!audit.clean()) ++dirty_trials;
        for (const auto& v : audit.violations) {
          os << k << ',' << v.step << ',' << v.edge << ',' << format_double(v.weight) << ','
             << format_double(v.temperature) << ',' << v.t_w << '\n';
        }
        for (double w : probes) {
          const auto trace = drift_trace(g, rec, cfg, log.a, w, kappa, epochs);
          for (const auto& e : trace.epochs) {
            drift << k << ',' << format_double(w) << ',' << e.epoch << ',' << e.start_step << ',' << e.non_essential
                  << ',' << format_double(e.temperature) << ',' << (e.censored ? 1 : 0) << '\n';
          }
        }
      }
      os << "# audit trials=" << log.trials.size() << " inclusions_checked=" << inclusions << " violations=" << violations
         << " trials_with_violations=" << dirty_trials << '\n';
      os << '\n' << drift.str();
      return kExitPass;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace samst::cli
