#include "dig/diffusion.hpp"

#include "dig/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dig {

TimeGrid make_time_grid(const NoiseSchedule& sched, const SdeSolverConfig& cfg,
                        double t_start) {
  detail::require(cfg.steps >= 1, "SdeSolverConfig: steps must be >= 1");
  detail::require(cfg.rho > 0.0, "SdeSolverConfig: rho must be > 0");
  detail::require(t_start > 0.0 && t_start <= sched.terminal_time() * (1.0 + 1e-12),
                  "time grid: t_start out of (0, T]");
  const double t0 = std::min(t_start, sched.terminal_time());
  const double sigma_start = sched.sigma(t0);
  const double sigma_floor = cfg.sigma_floor_frac * sched.max_sigma();

  TimeGrid grid;
  const int M = cfg.steps;
  if (M == 1 || sigma_start <= sigma_floor) {
    grid.t = {t0, 0.0};
    grid.sigma = {sigma_start, 0.0};
    return grid;
  }

  grid.t.resize(static_cast<std::size_t>(M) + 1);
  grid.sigma.resize(static_cast<std::size_t>(M) + 1);
  switch (cfg.grid) {
    case SdeSolverConfig::Grid::UniformT:
      for (int i = 0; i <= M; ++i) {
        const double t = t0 * (1.0 - static_cast<double>(i) / M);
        grid.t[static_cast<std::size_t>(i)] = t;
        grid.sigma[static_cast<std::size_t>(i)] = sched.sigma(t);
      }
      break;
    case SdeSolverConfig::Grid::UniformSigma:
    case SdeSolverConfig::Grid::GeometricSigma: {
      const double rho = (cfg.grid == SdeSolverConfig::Grid::UniformSigma) ? 1.0 : cfg.rho;
      const double hi = std::pow(sigma_start, 1.0 / rho);
      const double lo = std::pow(sigma_floor, 1.0 / rho);
      for (int i = 0; i < M; ++i) {
        const double frac = static_cast<double>(i) / (M - 1);
        const double sig = std::pow(hi + frac * (lo - hi), rho);
        grid.sigma[static_cast<std::size_t>(i)] = sig;
        grid.t[static_cast<std::size_t>(i)] = (i == 0) ? t0 : sched.sigma_inv(sig);
      }
      grid.t[static_cast<std::size_t>(M)] = 0.0;
      grid.sigma[static_cast<std::size_t>(M)] = 0.0;
      break;
    }
  }
  // Guard against inverse round-off producing a non-monotone grid.
  for (std::size_t i = 1; i < grid.t.size(); ++i)
    if (!(grid.t[i] < grid.t[i - 1]))
      throw NumericalError("time grid is not strictly decreasing");
  return grid;
}

Eigen::VectorXd reverse_sde_simulate(const Denoiser& den, const NoiseSchedule& sched,
                                     const SdeSolverConfig& cfg, double t_start,
                                     const Eigen::VectorXd& x_start, RngStream& rng) {
  detail::require(x_start.size() == den.dim(),
                  "reverse_sde_simulate: state dimension mismatch");
  detail::require(x_start.allFinite(), "reverse_sde_simulate: x_start not finite");
  const TimeGrid grid = make_time_grid(sched, cfg, t_start);
  const double sigma_floor = cfg.sigma_floor_frac * sched.max_sigma();
  const auto [eta_lo, eta_hi] = den.eta_range();

  Eigen::VectorXd x = x_start;
  const std::size_t steps = grid.t.size() - 1;
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = grid.t[i];
    const double sig = grid.sigma[i];
    const double eta = std::clamp(sig, std::max(eta_lo, 1e-300), eta_hi);
    const bool final_step = (i + 1 == steps);
    if (final_step && sig <= sigma_floor * (1.0 + 1e-9)) {
      x = den.denoise(x, eta);
      break;
    }
    const double h = t - grid.t[i + 1];
    const double gt = sched.g(t);
    x += (gt * gt * h / (eta * eta)) * (den.denoise(x, eta) - x);
    x += (gt * std::sqrt(h)) * rng.normal_vector(x.size());
  }
  return x;
}

Eigen::VectorXd denoising_posterior_sample(const Denoiser& den,
                                           const NoiseSchedule& sched,
                                           const SdeSolverConfig& cfg,
                                           const Eigen::VectorXd& z, double eta,
                                           RngStream& rng) {
  detail::require(eta > 0.0, "denoising_posterior_sample: eta must be > 0");
  const double top = sched.max_sigma();
  if (eta > top * (1.0 + 1e-12))
    throw NumericalError("denoising_posterior_sample: noise level " +
                         std::to_string(eta) + " exceeds sigma(T) = " +
                         std::to_string(top) + "; raise the schedule terminal time T");
  if (den.has_exact_conditional_sampler())
    return den.conditional_sample(z, eta, rng);
  return reverse_sde_simulate(den, sched, cfg, sched.sigma_inv(eta), z, rng);
}

}  // namespace dig
