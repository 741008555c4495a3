#pragma once

#include "dig/model.hpp"
#include "dig/rng.hpp"

#include <Eigen/Core>

#include <limits>
#include <memory>
#include <mutex>
#include <utility>

namespace dig {

// A denoiser maps a noisy vector z = s + eta*n to an estimate of s. Evaluation
// is a pure function of (z, eta): identical inputs give bit-identical outputs.
// Analytic denoisers for Gaussian and Gaussian-mixture priors additionally
// expose the exact conditional law p(s | s + eta*n = z) and a sampler for it.
class Denoiser {
public:
  virtual ~Denoiser() = default;

  virtual int dim() const = 0;
  virtual Eigen::VectorXd denoise(const Eigen::VectorXd& z, double eta) const = 0;

  virtual bool has_exact_conditional_sampler() const { return false; }
  virtual Eigen::VectorXd conditional_sample(const Eigen::VectorXd& z, double eta,
                                             RngStream& rng) const;

  // Declared valid noise range; callers clamp queries into it. Analytic
  // denoisers are valid on all of (0, inf).
  virtual std::pair<double, double> eta_range() const {
    return {0.0, std::numeric_limits<double>::infinity()};
  }
};

using DenoiserPtr = std::shared_ptr<const Denoiser>;

// ---------------------------------------------------------------------------
// Exact MMSE denoiser for a Gaussian prior N(xi, Gamma):
//   E[s | s + eta n = z] = xi + Gamma (Gamma + eta² I)⁻¹ (z - xi).
// Gamma is factored once (symmetric eigendecomposition); no explicit inverse
// is ever formed.
class GaussianDenoiser : public Denoiser {
public:
  explicit GaussianDenoiser(GaussianPrior prior);

  int dim() const override { return static_cast<int>(prior_.mean.size()); }
  Eigen::VectorXd denoise(const Eigen::VectorXd& z, double eta) const override;
  bool has_exact_conditional_sampler() const override { return true; }
  Eigen::VectorXd conditional_sample(const Eigen::VectorXd& z, double eta,
                                     RngStream& rng) const override;

  // The exact conditional law p(s | s + eta n = z) = N(mean, cov).
  struct Moments {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
  };
  Moments conditional_moments(const Eigen::VectorXd& z, double eta) const;

  const GaussianPrior& prior() const { return prior_; }

private:
  GaussianPrior prior_;
  Eigen::MatrixXd basis_;       // eigenvectors Q of Gamma
  Eigen::VectorXd eigenvalues_; // eigenvalues of Gamma, all > 0
};

// ---------------------------------------------------------------------------
// Exact MMSE denoiser for a Gaussian-mixture prior. Responsibilities are
// computed in log space with max subtraction.
class GmmDenoiser : public Denoiser {
public:
  explicit GmmDenoiser(GaussianMixturePrior prior);

  int dim() const override { return dim_; }
  Eigen::VectorXd denoise(const Eigen::VectorXd& z, double eta) const override;
  bool has_exact_conditional_sampler() const override { return true; }
  Eigen::VectorXd conditional_sample(const Eigen::VectorXd& z, double eta,
                                     RngStream& rng) const override;

  // Posterior mixture weights p(j | z) at noise level eta.
  Eigen::VectorXd responsibilities(const Eigen::VectorXd& z, double eta) const;
  // log p_eta(z), the noised marginal density.
  double log_marginal(const Eigen::VectorXd& z, double eta) const;

  const GaussianMixturePrior& prior() const { return prior_; }

private:
  GaussianMixturePrior prior_;
  int dim_;
  std::vector<Eigen::MatrixXd> bases_;
  std::vector<Eigen::VectorXd> eigenvalues_;
};

// ---------------------------------------------------------------------------
// MAP denoiser for the quadratic smoothness penalty lambda ||D s||²:
//   argmin ½ eta⁻² ||z - s||² + lambda ||D s||² = (I + 2 lambda eta² DᵀD)⁻¹ z,
// with D the forward-difference operator. Solved by a tridiagonal sweep, O(d).
class SmoothnessDenoiser : public Denoiser {
public:
  SmoothnessDenoiser(double lambda, int dim);

  int dim() const override { return dim_; }
  Eigen::VectorXd denoise(const Eigen::VectorXd& z, double eta) const override;
  double lambda() const { return lambda_; }

private:
  double lambda_;
  int dim_;
};

// ---------------------------------------------------------------------------
// MAP denoiser for the frequency-sparsity penalty lambda ||F s||₁ with F the
// unitary DFT: complex soft-thresholding of each coefficient by lambda eta²,
// the exact minimizer of ½ eta⁻² ||z - s||² + lambda ||F s||₁.
class FourierSparsityDenoiser : public Denoiser {
public:
  FourierSparsityDenoiser(double lambda, int dim);

  int dim() const override { return dim_; }
  Eigen::VectorXd denoise(const Eigen::VectorXd& z, double eta) const override;
  double lambda() const { return lambda_; }

private:
  double lambda_;
  int dim_;
};

// ---------------------------------------------------------------------------
// Denoiser backed by a child process speaking the length-prefixed float64
// protocol (see README). Requests are strictly sequential; concurrent callers
// are serialized internally.
class ExternalDenoiser : public Denoiser {
public:
  ExternalDenoiser(std::vector<std::string> command, int dim,
                   double eta_min = 0.0,
                   double eta_max = std::numeric_limits<double>::infinity());
  ~ExternalDenoiser() override;

  ExternalDenoiser(const ExternalDenoiser&) = delete;
  ExternalDenoiser& operator=(const ExternalDenoiser&) = delete;

  int dim() const override { return dim_; }
  Eigen::VectorXd denoise(const Eigen::VectorXd& z, double eta) const override;
  std::pair<double, double> eta_range() const override { return {eta_min_, eta_max_}; }

private:
  void spawn();
  void shutdown();

  std::vector<std::string> command_;
  int dim_;
  double eta_min_;
  double eta_max_;
  mutable std::mutex io_mutex_;
  int to_child_ = -1;
  int from_child_ = -1;
  long pid_ = -1;
};

// ---------------------------------------------------------------------------

// Tweedie's identity: score(z) = (den(z, eta) - z) / eta², the gradient of
// log p_eta at z when den is the exact MMSE denoiser.
Eigen::VectorXd tweedie_score(const Denoiser& den, const Eigen::VectorXd& z,
                              double eta);

// Builds the denoiser matching a component's prior.
DenoiserPtr make_denoiser(const ComponentSpec& spec);

// View of a denoiser with the exact-conditional-sampler capability hidden,
// forcing callers onto the reverse-SDE path. For convergence studies.
DenoiserPtr strip_exact_sampler(DenoiserPtr den);

}  // namespace dig
