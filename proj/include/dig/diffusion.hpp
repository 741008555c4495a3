#pragma once

#include "dig/denoise.hpp"
#include "dig/rng.hpp"
#include "dig/schedule.hpp"

#include <Eigen/Core>

#include <vector>

namespace dig {

// Discretization of the reverse-time SDE.
struct SdeSolverConfig {
  enum class Grid { UniformT, UniformSigma, GeometricSigma };

  int steps = 200;
  Grid grid = Grid::GeometricSigma;
  // Shape of the GeometricSigma grid: sigma levels interpolate linearly in
  // sigma^(1/rho); rho = 1 recovers UniformSigma, larger rho spends more steps
  // at small noise.
  double rho = 7.0;
  // The final update becomes the plain denoiser output once sigma falls to
  // sigma_floor_frac * sigma(T); the drift term divides by sigma² and is
  // singular at t = 0.
  double sigma_floor_frac = 1e-4;
};

// Strictly decreasing times t[0] = t_start > ... > t[steps] = 0, with the
// matching sigma(t) values.
struct TimeGrid {
  std::vector<double> t;
  std::vector<double> sigma;
};

TimeGrid make_time_grid(const NoiseSchedule& sched, const SdeSolverConfig& cfg,
                        double t_start);

// Euler–Maruyama simulation of the reverse-time SDE from t_start down to 0:
//   x <- x + g(t)² (den(x, sigma(t)) - x) / sigma(t)² h + g(t) sqrt(h) eps.
// Deterministic given the rng stream. One fresh normal vector per step.
Eigen::VectorXd reverse_sde_simulate(const Denoiser& den, const NoiseSchedule& sched,
                                     const SdeSolverConfig& cfg, double t_start,
                                     const Eigen::VectorXd& x_start, RngStream& rng);

// Draws from the denoising posterior p(s | s + eta n = z). Uses the denoiser's
// exact conditional sampler when it has one; otherwise warm-starts the reverse
// SDE at t = sigma⁻¹(eta) with state z. Throws when eta exceeds sigma(T).
Eigen::VectorXd denoising_posterior_sample(const Denoiser& den,
                                           const NoiseSchedule& sched,
                                           const SdeSolverConfig& cfg,
                                           const Eigen::VectorXd& z, double eta,
                                           RngStream& rng);

}  // namespace dig
