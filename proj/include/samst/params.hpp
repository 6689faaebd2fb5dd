#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace samst {

/// Multiplier in the drift-phase length 4.21 * m * n * ln(2 m^2 / delta).
inline constexpr double kDriftPhaseConstant = 4.21;

/// Principal branch W0 of the Lambert W function, x >= 0.
/// Throws Error(NegativeArgument) for x < 0.
double lambert_w0(double x);

/// Drift-phase length 4.21 * m * n * ln(2 m^2 / delta).
double drift_phase_length(std::size_t m, std::size_t n, double delta);

/// Cooling parameter (m n ln(m/delta))^(1 + 1/eps). Throws Error(DomainError)
/// when m/delta <= 1 or m n ln(m/delta) <= 1.
double ell_from_eps(std::size_t m, std::size_t n, double delta, double eps);

/// gamma* = exp(W0((ell - 1) / t_base)), the minimiser of kappa_bound over gamma.
double optimal_gamma(double ell, double t_base);

/// 1 + kappa = a * exp(gamma * t_base / (ell - 1)) / ln(gamma).
/// Throws Error(DomainError) when gamma <= 1.
double kappa_bound(double a, double gamma, double ell, double t_base);

/// Freeze-out factor ln(4 (ell - 1) / delta).
double freeze_out_a(double ell, double delta);

/// Freeze-out regime 1 < a <= ell - 1.
bool freeze_out_in_regime(double a, double ell) noexcept;

/// Stopping step bound (ell/2) ln(a t0 / w_min). Throws Error(DomainError)
/// when a t0 <= w_min.
double t_end_bound(double ell, double a, double t0, double w_min);

/// Exact freeze-out step ln(w_min / (a t0)) / ln(1 - 1/ell) (real-valued).
double t_end_exact(double ell, double a, double t0, double w_min);

/// First integer step t with T_t <= w / a; 0 if T_0 already qualifies.
std::uint64_t freeze_out_step(double t0, double ell, double a, double w);

struct WegenerSchedule {
  double t0 = 0.0;
  double beta = 0.0;
  /// 1 - beta computed without cancellation; beta itself rounds to 1.0 for
  /// moderate m.
  double one_minus_beta = 0.0;
  /// Equivalent cooling parameter 1 / (1 - beta).
  double ell = 0.0;
  double max_steps = 0.0;
};

/// Legacy schedule for (1+eps)-separated integer weights <= 2^m:
/// T0 = 2^m, beta = (1+eps/2)^(-m^(-7-8/eps)),
/// steps = 2 log2(1+eps/2)^(-1) m^(8+8/eps). Throws Error(Overflow) when a
/// quantity leaves double range.
WegenerSchedule wegener_schedule(std::size_t m, double eps);

struct ParamWarning {
  std::string code;
  std::string message;
};

struct ScheduleInputs {
  std::size_t m = 0;
  std::size_t n = 0;
  double delta = 0.1;
  double eps = 1.0;
  double t0 = 1.0;
  double w_min = 1.0;
  double w_max = 1.0;
  /// Overrides the eps-derived cooling parameter.
  std::optional<double> ell;
  /// Overrides the default a = ln(4(ell-1)/delta).
  std::optional<double> a;
};

/// All derived schedule quantities for one instance.
struct ScheduleParams {
  std::size_t m = 0;
  std::size_t n = 0;
  double delta = 0.0;
  double eps = 0.0;
  double ell = 0.0;
  double a = 0.0;
  double t_base = 0.0;
  double b = 0.0;  // (ell - 1) / t_base
  double gamma = 0.0;
  double one_plus_kappa = 0.0;
  double t_end = 0.0;
  double t_end_exact = 0.0;
  double t0 = 0.0;
  double w_min = 0.0;
  double w_max = 0.0;
  bool in_regime = true;
  /// Step budget from t_end_exact instead of the closed-form t_end.
  bool budget_exact = false;
  std::vector<ParamWarning> warnings;

  double kappa() const noexcept { return one_plus_kappa - 1.0; }
  double beta() const noexcept { return 1.0 - 1.0 / ell; }
  /// ceil(t_end), or ceil(t_end_exact) when budget_exact is set.
  std::uint64_t step_budget() const;
};

/// Derives the full schedule. Throws Error(DomainError) on invalid inputs
/// (delta outside (0,1), eps <= 0, t0 < w_max, ...).
ScheduleParams derive_schedule(const ScheduleInputs& in);

}  // namespace samst
