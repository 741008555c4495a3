#include "dig/denoise.hpp"

#include "dig/errors.hpp"
#include "dig/fft.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace dig {

Eigen::VectorXd Denoiser::conditional_sample(const Eigen::VectorXd&, double,
                                             RngStream&) const {
  throw NumericalError("denoiser does not provide an exact conditional sampler");
}

namespace {

// Eigendecomposition of an SPD covariance; throws on asymmetry or
// non-positive spectrum.
void spd_eigendecompose(const Eigen::MatrixXd& cov, Eigen::MatrixXd& basis,
                        Eigen::VectorXd& eigenvalues, const char* what) {
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  detail::require(cov.rows() == cov.cols() && cov.rows() > 0 &&
                      (cov - cov.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * scale,
                  std::string(what) + ": covariance not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  detail::require(es.info() == Eigen::Success,
                  std::string(what) + ": eigendecomposition failed");
  detail::require(es.eigenvalues().minCoeff() > 0.0,
                  std::string(what) + ": covariance not positive definite");
  basis = es.eigenvectors();
  eigenvalues = es.eigenvalues();
}

}  // namespace

// ------------------------------- Gaussian ---------------------------------

GaussianDenoiser::GaussianDenoiser(GaussianPrior prior) : prior_(std::move(prior)) {
  detail::require(prior_.mean.size() == prior_.cov.rows(),
                  "GaussianDenoiser: mean/cov dimension mismatch");
  spd_eigendecompose(prior_.cov, basis_, eigenvalues_, "GaussianDenoiser");
}

Eigen::VectorXd GaussianDenoiser::denoise(const Eigen::VectorXd& z, double eta) const {
  detail::require(eta > 0.0, "GaussianDenoiser::denoise: eta must be > 0");
  detail::require(z.size() == prior_.mean.size(),
                  "GaussianDenoiser::denoise: dimension mismatch");
  const Eigen::VectorXd w = basis_.transpose() * (z - prior_.mean);
  const Eigen::VectorXd gain =
      eigenvalues_.array() / (eigenvalues_.array() + eta * eta);
  return prior_.mean + basis_ * (gain.asDiagonal() * w);
}

GaussianDenoiser::Moments GaussianDenoiser::conditional_moments(
    const Eigen::VectorXd& z, double eta) const {
  Moments m;
  m.mean = denoise(z, eta);
  // cov = Gamma - Gamma (Gamma + eta² I)⁻¹ Gamma = Q diag(l eta²/(l+eta²)) Qᵀ
  const Eigen::VectorXd var = (eigenvalues_.array() * eta * eta) /
                              (eigenvalues_.array() + eta * eta);
  m.cov = basis_ * var.asDiagonal() * basis_.transpose();
  return m;
}

Eigen::VectorXd GaussianDenoiser::conditional_sample(const Eigen::VectorXd& z,
                                                     double eta,
                                                     RngStream& rng) const {
  const Eigen::VectorXd mean = denoise(z, eta);
  const Eigen::VectorXd sd = ((eigenvalues_.array() * eta * eta) /
                              (eigenvalues_.array() + eta * eta))
                                 .sqrt();
  const Eigen::VectorXd w = rng.normal_vector(dim());
  return mean + basis_ * (sd.asDiagonal() * w);
}

// --------------------------------- GMM ------------------------------------

GmmDenoiser::GmmDenoiser(GaussianMixturePrior prior) : prior_(std::move(prior)) {
  const auto J = static_cast<std::size_t>(prior_.weights.size());
  detail::require(J > 0 && prior_.means.size() == J && prior_.covs.size() == J,
                  "GmmDenoiser: component count mismatch");
  detail::require(prior_.weights.minCoeff() >= 0.0 &&
                      std::abs(prior_.weights.sum() - 1.0) <= 1e-12,
                  "GmmDenoiser: weights not simplex");
  dim_ = static_cast<int>(prior_.means[0].size());
  bases_.resize(J);
  eigenvalues_.resize(J);
  for (std::size_t j = 0; j < J; ++j) {
    detail::require(prior_.means[j].size() == dim_, "GmmDenoiser: mean dims differ");
    spd_eigendecompose(prior_.covs[j], bases_[j], eigenvalues_[j], "GmmDenoiser");
  }
}

Eigen::VectorXd GmmDenoiser::responsibilities(const Eigen::VectorXd& z,
                                              double eta) const {
  detail::require(eta > 0.0, "GmmDenoiser: eta must be > 0");
  detail::require(z.size() == dim_, "GmmDenoiser: dimension mismatch");
  const auto J = prior_.weights.size();
  Eigen::VectorXd logp(J);
  for (Eigen::Index j = 0; j < J; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    // log N(z; mu_j, Sigma_j + eta² I) through the eigenbasis of Sigma_j
    const Eigen::VectorXd w = bases_[ju].transpose() * (z - prior_.means[ju]);
    const Eigen::ArrayXd lam = eigenvalues_[ju].array() + eta * eta;
    const double quad = (w.array().square() / lam).sum();
    const double logdet = lam.log().sum();
    logp[j] = std::log(prior_.weights[j]) -
              0.5 * (quad + logdet + dim_ * std::log(2.0 * std::numbers::pi));
  }
  const double top = logp.maxCoeff();
  if (!std::isfinite(top))
    throw NumericalError("GmmDenoiser: all responsibilities underflowed");
  Eigen::VectorXd r = (logp.array() - top).exp();
  return r / r.sum();
}

double GmmDenoiser::log_marginal(const Eigen::VectorXd& z, double eta) const {
  const auto J = prior_.weights.size();
  Eigen::VectorXd logp(J);
  for (Eigen::Index j = 0; j < J; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const Eigen::VectorXd w = bases_[ju].transpose() * (z - prior_.means[ju]);
    const Eigen::ArrayXd lam = eigenvalues_[ju].array() + eta * eta;
    logp[j] = std::log(prior_.weights[j]) -
              0.5 * ((w.array().square() / lam).sum() + lam.log().sum() +
                     dim_ * std::log(2.0 * std::numbers::pi));
  }
  const double top = logp.maxCoeff();
  return top + std::log((logp.array() - top).exp().sum());
}

Eigen::VectorXd GmmDenoiser::denoise(const Eigen::VectorXd& z, double eta) const {
  const Eigen::VectorXd r = responsibilities(z, eta);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const Eigen::VectorXd w = bases_[ju].transpose() * (z - prior_.means[ju]);
    const Eigen::VectorXd gain =
        eigenvalues_[ju].array() / (eigenvalues_[ju].array() + eta * eta);
    out += r[j] * (prior_.means[ju] + bases_[ju] * (gain.asDiagonal() * w));
  }
  return out;
}

Eigen::VectorXd GmmDenoiser::conditional_sample(const Eigen::VectorXd& z, double eta,
                                                RngStream& rng) const {
  const Eigen::VectorXd r = responsibilities(z, eta);
  const double u = rng.uniform();
  Eigen::Index j = 0;
  double acc = 0.0;
  for (; j < r.size() - 1; ++j) {
    acc += r[j];
    if (u < acc) break;
  }
  const auto ju = static_cast<std::size_t>(j);
  const Eigen::VectorXd w = bases_[ju].transpose() * (z - prior_.means[ju]);
  const Eigen::VectorXd gain =
      eigenvalues_[ju].array() / (eigenvalues_[ju].array() + eta * eta);
  const Eigen::VectorXd mean = prior_.means[ju] + bases_[ju] * (gain.asDiagonal() * w);
  const Eigen::VectorXd sd = ((eigenvalues_[ju].array() * eta * eta) /
                              (eigenvalues_[ju].array() + eta * eta))
                                 .sqrt();
  return mean + bases_[ju] * (sd.asDiagonal() * rng.normal_vector(dim_));
}

// ------------------------------ Smoothness --------------------------------

SmoothnessDenoiser::SmoothnessDenoiser(double lambda, int dim)
    : lambda_(lambda), dim_(dim) {
  detail::require(lambda >= 0.0, "SmoothnessDenoiser: lambda must be >= 0");
  detail::require(dim >= 1, "SmoothnessDenoiser: dim must be >= 1");
}

Eigen::VectorXd SmoothnessDenoiser::denoise(const Eigen::VectorXd& z,
                                            double eta) const {
  detail::require(eta > 0.0, "SmoothnessDenoiser::denoise: eta must be > 0");
  detail::require(z.size() == dim_, "SmoothnessDenoiser::denoise: dimension mismatch");
  const double c = 2.0 * lambda_ * eta * eta;
  const Eigen::Index n = z.size();
  if (c == 0.0 || n == 1) return z;
  // Thomas sweep for (I + c DᵀD): diagonal 1 + c*(1,2,...,2,1), off-diagonal -c.
  Eigen::VectorXd diag(n);
  diag[0] = 1.0 + c;
  for (Eigen::Index i = 1; i + 1 < n; ++i) diag[i] = 1.0 + 2.0 * c;
  diag[n - 1] = 1.0 + c;
  Eigen::VectorXd cp(n - 1), dp(n);
  cp[0] = -c / diag[0];
  dp[0] = z[0] / diag[0];
  for (Eigen::Index i = 1; i < n; ++i) {
    const double denom = diag[i] + c * cp[i - 1];
    if (i + 1 < n) cp[i] = -c / denom;
    dp[i] = (z[i] + c * dp[i - 1]) / denom;
  }
  Eigen::VectorXd s(n);
  s[n - 1] = dp[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) s[i] = dp[i] - cp[i] * s[i + 1];
  return s;
}

// --------------------------- Fourier sparsity ------------------------------

FourierSparsityDenoiser::FourierSparsityDenoiser(double lambda, int dim)
    : lambda_(lambda), dim_(dim) {
  detail::require(lambda >= 0.0, "FourierSparsityDenoiser: lambda must be >= 0");
  detail::require(dim >= 1, "FourierSparsityDenoiser: dim must be >= 1");
}

Eigen::VectorXd FourierSparsityDenoiser::denoise(const Eigen::VectorXd& z,
                                                 double eta) const {
  detail::require(eta > 0.0, "FourierSparsityDenoiser::denoise: eta must be > 0");
  detail::require(z.size() == dim_,
                  "FourierSparsityDenoiser::denoise: dimension mismatch");
  const double tau = lambda_ * eta * eta;
  Eigen::VectorXcd c = unitary_dft(z);
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double mag = std::abs(c[k]);
    c[k] *= (mag > tau) ? (1.0 - tau / mag) : 0.0;
  }
  return unitary_idft_real(c);
}

// --------------------------------- misc -----------------------------------

Eigen::VectorXd tweedie_score(const Denoiser& den, const Eigen::VectorXd& z,
                              double eta) {
  detail::require(eta > 0.0, "tweedie_score: eta must be > 0");
  return (den.denoise(z, eta) - z) / (eta * eta);
}

namespace {

class StrippedDenoiser : public Denoiser {
public:
  explicit StrippedDenoiser(DenoiserPtr inner) : inner_(std::move(inner)) {}
  int dim() const override { return inner_->dim(); }
  Eigen::VectorXd denoise(const Eigen::VectorXd& z, double eta) const override {
    return inner_->denoise(z, eta);
  }
  std::pair<double, double> eta_range() const override { return inner_->eta_range(); }

private:
  DenoiserPtr inner_;
};

}  // namespace

DenoiserPtr strip_exact_sampler(DenoiserPtr den) {
  return std::make_shared<StrippedDenoiser>(std::move(den));
}

DenoiserPtr make_denoiser(const ComponentSpec& spec) {
  struct Builder {
    int dim;
    DenoiserPtr operator()(const GaussianPrior& p) const {
      return std::make_shared<GaussianDenoiser>(p);
    }
    DenoiserPtr operator()(const GaussianMixturePrior& p) const {
      return std::make_shared<GmmDenoiser>(p);
    }
    DenoiserPtr operator()(const SmoothnessPrior& p) const {
      return std::make_shared<SmoothnessDenoiser>(p.lambda, dim);
    }
    DenoiserPtr operator()(const FourierSparsityPrior& p) const {
      return std::make_shared<FourierSparsityDenoiser>(p.lambda, dim);
    }
    DenoiserPtr operator()(const ExternalPrior& p) const {
      return std::make_shared<ExternalDenoiser>(p.command, dim, p.eta_min, p.eta_max);
    }
  };
  return std::visit(Builder{spec.dim}, spec.prior);
}

}  // namespace dig
