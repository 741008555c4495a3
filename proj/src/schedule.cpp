#include "dig/schedule.hpp"

#include "dig/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dig {

NoiseSchedule NoiseSchedule::constant(double g0, double T) {
  detail::require(g0 > 0.0, "NoiseSchedule: g0 must be > 0");
  detail::require(T > 0.0, "NoiseSchedule: T must be > 0");
  return NoiseSchedule(Kind::Constant, g0, T);
}

NoiseSchedule NoiseSchedule::exponential(double alpha, double T) {
  detail::require(alpha > 1.0, "NoiseSchedule: alpha must be > 1");
  detail::require(T > 0.0, "NoiseSchedule: T must be > 0");
  return NoiseSchedule(Kind::Exponential, alpha, T);
}

double NoiseSchedule::g(double t) const {
  switch (kind_) {
    case Kind::Constant: return param_;
    case Kind::Exponential: return std::pow(param_, t);
  }
  return 0.0;
}

double NoiseSchedule::sigma(double t) const {
  detail::require(t >= 0.0 && t <= T_ * (1.0 + 1e-12),
                  "NoiseSchedule::sigma: t out of [0, T]");
  t = std::min(t, T_);
  switch (kind_) {
    case Kind::Constant:
      return param_ * std::sqrt(t);
    case Kind::Exponential: {
      // ∫₀ᵗ alpha^{2s} ds = (alpha^{2t} - 1) / (2 ln alpha)
      const double la = std::log(param_);
      return std::sqrt(std::expm1(2.0 * t * la) / (2.0 * la));
    }
  }
  return 0.0;
}

double NoiseSchedule::sigma_inv(double eta) const {
  detail::require(eta >= 0.0, "NoiseSchedule::sigma_inv: eta must be >= 0");
  const double top = max_sigma();
  if (eta > top * (1.0 + 1e-12))
    throw NumericalError("noise level " + std::to_string(eta) +
                         " exceeds sigma(T) = " + std::to_string(top) +
                         "; raise the schedule terminal time T");
  double t = 0.0;
  switch (kind_) {
    case Kind::Constant:
      t = (eta / param_) * (eta / param_);
      break;
    case Kind::Exponential: {
      const double la = std::log(param_);
      t = std::log1p(2.0 * eta * eta * la) / (2.0 * la);
      break;
    }
  }
  return std::min(t, T_);
}

AnnealSchedule::AnnealSchedule(double v_max, double v_min, int n_sweeps, double eps,
                               int freeze_at)
    : v_max_(v_max), v_min_(v_min), n_(n_sweeps), eps_(eps),
      freeze_at_(freeze_at < 0 ? n_sweeps : freeze_at) {
  detail::require(v_min > 0.0 && v_max >= v_min,
                  "AnnealSchedule: requires v_max >= v_min > 0");
  detail::require(n_sweeps >= 1, "AnnealSchedule: n_sweeps must be >= 1");
  detail::require(eps > 0.0, "AnnealSchedule: eps must be > 0");
  detail::require(freeze_at_ <= n_, "AnnealSchedule: freeze_at must be <= N");
}

AnnealSchedule AnnealSchedule::flat(double v, int n_sweeps) {
  return AnnealSchedule(v, v, n_sweeps, 0.008, 0);
}

double AnnealSchedule::value(int i) const {
  detail::require(i >= 0 && i <= n_, "AnnealSchedule::value: i out of [0, N]");
  if (i >= freeze_at_) return v_min_;
  const double frac = static_cast<double>(i) / static_cast<double>(n_);
  const double arg = (frac + eps_) / (1.0 + eps_) * std::numbers::pi / 2.0;
  const double c = std::cos(arg);
  return v_min_ + (v_max_ - v_min_) * c * c;
}

}  // namespace dig
