#include "samst/params.hpp"

#include <cmath>
#include <limits>

#include "samst/error.hpp"

namespace samst {
namespace {

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::DomainError, "delta must lie in (0, 1)");
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x)) throw Error(ErrorCode::DomainError, "lambert_w0 of NaN");
  if (x < 0.0) throw Error(ErrorCode::NegativeArgument, "lambert_w0 supports only x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  // Halley iteration on f(w) = w e^w - x from ln(1 + x), which lies above
  // the root for every x > 0.
  double w = std::log1p(x);
  for (int iter = 0; iter < 100; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double fp = ew * (w + 1.0);
    const double step = f / (fp - (w + 2.0) * f / (2.0 * w + 2.0));
    w -= step;
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double drift_phase_length(std::size_t m, std::size_t n, double delta) {
  require_delta(delta);
  const double md = static_cast<double>(m);
  return kDriftPhaseConstant * md * static_cast<double>(n) * std::log(2.0 * md * md / delta);
}

double ell_from_eps(std::size_t m, std::size_t n, double delta, double eps) {
  require_delta(delta);
  if (!(eps > 0.0)) throw Error(ErrorCode::DomainError, "eps must be positive");
  const double ratio = static_cast<double>(m) / delta;
  if (!(ratio > 1.0)) throw Error(ErrorCode::DomainError, "m / delta must exceed 1");
  const double base = static_cast<double>(m) * static_cast<double>(n) * std::log(ratio);
  if (!(base > 1.0)) throw Error(ErrorCode::DomainError, "m n ln(m/delta) must exceed 1");
  return std::pow(base, 1.0 + 1.0 / eps);
}

double optimal_gamma(double ell, double t_base) {
  if (!(t_base > 0.0)) throw Error(ErrorCode::DomainError, "t_base must be positive");
  if (!(ell > 1.0)) throw Error(ErrorCode::DomainError, "ell must exceed 1");
  return std::exp(lambert_w0((ell - 1.0) / t_base));
}

double kappa_bound(double a, double gamma, double ell, double t_base) {
  if (!(gamma > 1.0)) throw Error(ErrorCode::DomainError, "gamma must exceed 1");
  if (!(ell > 1.0)) throw Error(ErrorCode::DomainError, "ell must exceed 1");
  return a * std::exp(gamma * t_base / (ell - 1.0)) / std::log(gamma);
}

double freeze_out_a(double ell, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::DomainError, "delta must be positive");
  if (!(ell > 1.0)) throw Error(ErrorCode::DomainError, "ell must exceed 1");
  return std::log(4.0 * (ell - 1.0) / delta);
}

bool freeze_out_in_regime(double a, double ell) noexcept { return a > 1.0 && a <= ell - 1.0; }

double t_end_bound(double ell, double a, double t0, double w_min) {
  if (!(a * t0 > w_min)) throw Error(ErrorCode::DomainError, "a * t0 must exceed w_min");
  return 0.5 * ell * std::log(a * t0 / w_min);
}

double t_end_exact(double ell, double a, double t0, double w_min) {
  if (!(a * t0 > w_min)) throw Error(ErrorCode::DomainError, "a * t0 must exceed w_min");
  if (!(ell > 1.0)) throw Error(ErrorCode::DomainError, "ell must exceed 1");
  return std::log(w_min / (a * t0)) / std::log1p(-1.0 / ell);
}

std::uint64_t freeze_out_step(double t0, double ell, double a, double w) {
  const double threshold = w / a;
  auto temp = [&](std::uint64_t t) {
    return t == 0 ? t0 : t0 * std::exp(static_cast<double>(t) * std::log1p(-1.0 / ell));
  };
  if (t0 <= threshold) return 0;
  const double guess = std::ceil(std::log(threshold / t0) / std::log1p(-1.0 / ell));
  if (!(guess < 1.8e19)) throw Error(ErrorCode::Overflow, "freeze-out step exceeds 64-bit range");
  auto t = static_cast<std::uint64_t>(std::max(guess, 1.0));
  while (t > 0 && temp(t - 1) <= threshold) --t;
  while (temp(t) > threshold) ++t;
  return t;
}

WegenerSchedule wegener_schedule(std::size_t m, double eps) {
  if (m < 2) throw Error(ErrorCode::DomainError, "m must be at least 2");
  if (!(eps > 0.0)) throw Error(ErrorCode::DomainError, "eps must be positive");
  const double md = static_cast<double>(m);
  WegenerSchedule s;
  s.t0 = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(m, 4096)));
  if (std::isinf(s.t0)) throw Error(ErrorCode::Overflow, "2^m exceeds double range");
  const double exponent = std::log1p(eps / 2.0) * std::pow(md, -7.0 - 8.0 / eps);
  s.beta = std::exp(-exponent);
  s.one_minus_beta = -std::expm1(-exponent);
  s.ell = 1.0 / s.one_minus_beta;
  s.max_steps = 2.0 / std::log2(1.0 + eps / 2.0) * std::pow(md, 8.0 + 8.0 / eps);
  if (std::isinf(s.max_steps) || std::isinf(s.ell)) {
    throw Error(ErrorCode::Overflow, "step budget exceeds double range");
  }
  return s;
}

std::uint64_t ScheduleParams::step_budget() const {
  const double steps = std::ceil(budget_exact ? t_end_exact : t_end);
  if (!(steps < 1.8e19)) throw Error(ErrorCode::Overflow, "t_end exceeds 64-bit step range");
  return static_cast<std::uint64_t>(steps);
}

ScheduleParams derive_schedule(const ScheduleInputs& in) {
  require_delta(in.delta);
  if (!(in.eps > 0.0)) throw Error(ErrorCode::DomainError, "eps must be positive");
  if (in.m < 1 || in.n < 2) throw Error(ErrorCode::DomainError, "need m >= 1 and n >= 2");
  if (!(in.w_min > 0.0) || in.w_max < in.w_min) throw Error(ErrorCode::DomainError, "need 0 < w_min <= w_max");
  if (!(in.t0 >= in.w_max)) throw Error(ErrorCode::DomainError, "t0 must be at least w_max");

  ScheduleParams p;
  p.m = in.m;
  p.n = in.n;
  p.delta = in.delta;
  p.eps = in.eps;
  p.t0 = in.t0;
  p.w_min = in.w_min;
  p.w_max = in.w_max;
  p.ell = in.ell ? *in.ell : ell_from_eps(in.m, in.n, in.delta, in.eps);
  if (!(p.ell > 2.0)) throw Error(ErrorCode::DomainError, "ell must exceed 2");
  p.t_base = drift_phase_length(in.m, in.n, in.delta);
  p.b = (p.ell - 1.0) / p.t_base;
  p.a = in.a ? *in.a : freeze_out_a(p.ell, in.delta);
  if (!(p.a > 0.0)) throw Error(ErrorCode::DomainError, "a must be positive");
  if (!freeze_out_in_regime(p.a, p.ell)) {
    p.in_regime = false;
    p.warnings.push_back({"ConstraintViolation", "freeze-out factor a lies outside (1, ell-1]; the heavy-edge guarantee does not apply"});
  }
  if (in.a && *in.a < freeze_out_a(p.ell, in.delta)) {
    p.warnings.push_back({"BelowFreezeOutBound", "a is below ln(4(ell-1)/delta)"});
  }
  p.gamma = optimal_gamma(p.ell, p.t_base);
  p.one_plus_kappa = kappa_bound(p.a, p.gamma, p.ell, p.t_base);
  p.t_end = t_end_bound(p.ell, p.a, p.t0, p.w_min);
  p.t_end_exact = t_end_exact(p.ell, p.a, p.t0, p.w_min);
  return p;
}

}  // namespace samst
