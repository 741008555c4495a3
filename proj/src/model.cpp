#include "dig/model.hpp"

#include "dig/errors.hpp"
#include "dig/rng.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>

namespace dig {

SensingOp SensingOp::identity(int d) {
  return SensingOp(Kind::Identity, d, d);
}

SensingOp SensingOp::scaled(double c, int d) {
  SensingOp op(Kind::Scaled, d, d);
  op.c_ = c;
  return op;
}

SensingOp SensingOp::dense(Eigen::MatrixXd H) {
  SensingOp op(Kind::Dense, static_cast<int>(H.rows()), static_cast<int>(H.cols()));
  op.matrix_ = std::move(H);
  return op;
}

Eigen::VectorXd SensingOp::apply(const Eigen::VectorXd& x) const {
  detail::require(x.size() == d_, "SensingOp::apply: dimension mismatch");
  switch (kind_) {
    case Kind::Identity: return x;
    case Kind::Scaled: return c_ * x;
    case Kind::Dense: return matrix_ * x;
  }
  return x;
}

Eigen::VectorXd SensingOp::apply_transpose(const Eigen::VectorXd& y) const {
  detail::require(y.size() == m_, "SensingOp::apply_transpose: dimension mismatch");
  switch (kind_) {
    case Kind::Identity: return y;
    case Kind::Scaled: return c_ * y;
    case Kind::Dense: return matrix_.transpose() * y;
  }
  return y;
}

Eigen::MatrixXd SensingOp::gram() const {
  switch (kind_) {
    case Kind::Identity: return Eigen::MatrixXd::Identity(d_, d_);
    case Kind::Scaled: return (c_ * c_) * Eigen::MatrixXd::Identity(d_, d_);
    case Kind::Dense: return matrix_.transpose() * matrix_;
  }
  return {};
}

Eigen::MatrixXd SensingOp::as_matrix() const {
  switch (kind_) {
    case Kind::Identity: return Eigen::MatrixXd::Identity(m_, d_);
    case Kind::Scaled: return c_ * Eigen::MatrixXd::Identity(m_, d_);
    case Kind::Dense: return matrix_;
  }
  return {};
}

std::vector<int> MixtureModel::relaxed_indices() const {
  std::vector<int> idx;
  for (int k = 0; k < num_components(); ++k)
    if (!components[static_cast<std::size_t>(k)].sensing.is_identity()) idx.push_back(k);
  return idx;
}

int MixtureModel::total_dim() const {
  int d = 0;
  for (const auto& c : components) d += c.dim;
  return d;
}

bool is_spd(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols() || cov.rows() == 0) return false;
  if (!cov.allFinite()) return false;
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) return false;
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  return llt.info() == Eigen::Success;
}

namespace {

void validate_prior(const Prior& prior, int dim, int k, std::vector<std::string>& out) {
  auto bad = [&](const std::string& msg) {
    out.push_back("component " + std::to_string(k) + ": " + msg);
  };
  if (const auto* g = std::get_if<GaussianPrior>(&prior)) {
    if (g->mean.size() != dim) bad("gaussian prior mean dimension mismatch");
    if (g->cov.rows() != dim || g->cov.cols() != dim)
      bad("gaussian prior covariance dimension mismatch");
    else if (!is_spd(g->cov))
      bad("gaussian prior covariance is not symmetric positive definite");
  } else if (const auto* m = std::get_if<GaussianMixturePrior>(&prior)) {
    const auto J = m->weights.size();
    if (J == 0 || m->means.size() != static_cast<std::size_t>(J) ||
        m->covs.size() != static_cast<std::size_t>(J)) {
      bad("mixture prior component count mismatch");
      return;
    }
    if (m->weights.minCoeff() < 0.0 || std::abs(m->weights.sum() - 1.0) > 1e-12)
      bad("mixture prior weights not simplex");
    for (std::size_t j = 0; j < m->means.size(); ++j) {
      if (m->means[j].size() != dim) bad("mixture prior mean dimension mismatch");
      if (m->covs[j].rows() != dim || m->covs[j].cols() != dim)
        bad("mixture prior covariance dimension mismatch");
      else if (!is_spd(m->covs[j]))
        bad("mixture prior covariance " + std::to_string(j) +
            " is not symmetric positive definite");
    }
  } else if (const auto* s = std::get_if<SmoothnessPrior>(&prior)) {
    if (!(s->lambda >= 0.0)) bad("smoothness prior requires lambda >= 0");
  } else if (const auto* f = std::get_if<FourierSparsityPrior>(&prior)) {
    if (!(f->lambda >= 0.0)) bad("fourier sparsity prior requires lambda >= 0");
  } else if (const auto* e = std::get_if<ExternalPrior>(&prior)) {
    if (e->command.empty()) bad("external prior requires a command");
    if (!(e->eta_min >= 0.0) || !(e->eta_max > e->eta_min))
      bad("external prior eta range invalid");
  }
}

}  // namespace

std::vector<std::string> validate_model(const MixtureModel& model) {
  std::vector<std::string> out;
  if (model.components.empty()) out.push_back("model has no components");
  if (!(model.sigma_v > 0.0)) out.push_back("sigma_v must be > 0");
  if (model.obs_dim <= 0) out.push_back("obs_dim must be > 0");
  for (int k = 0; k < model.num_components(); ++k) {
    const auto& c = model.components[static_cast<std::size_t>(k)];
    auto bad = [&](const std::string& msg) {
      out.push_back("component " + std::to_string(k) + ": " + msg);
    };
    if (c.dim <= 0) bad("dim must be > 0");
    if (c.sensing.in_dim() != c.dim) bad("sensing input dimension mismatch");
    if (c.sensing.out_dim() != model.obs_dim)
      bad("sensing output dimension does not match obs_dim");
    if (c.sensing.kind() == SensingOp::Kind::Dense &&
        !c.sensing.as_matrix().allFinite())
      bad("dense sensing matrix has non-finite entries");
    if (c.sensing.is_identity()) {
      if (c.relax_eta != 0.0) bad("identity sensing requires relax_eta = 0");
    } else {
      if (!(c.relax_eta > 0.0)) bad("relaxation required: non-identity sensing needs relax_eta > 0");
    }
    validate_prior(c.prior, c.dim, k, out);
  }
  return out;
}

void validate_model_or_throw(const MixtureModel& model) {
  auto violations = validate_model(model);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid model:";
  for (const auto& v : violations) msg << "\n  " << v;
  throw ConfigError(msg.str());
}

Observation simulate_observation(const MixtureModel& model,
                                 const std::vector<Eigen::VectorXd>& true_components,
                                 std::uint64_t seed) {
  detail::require(true_components.size() == model.components.size(),
                  "simulate_observation: component count mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(model.obs_dim);
  for (std::size_t k = 0; k < true_components.size(); ++k) {
    detail::require(true_components[k].size() == model.components[k].dim,
                    "simulate_observation: component " + std::to_string(k) +
                        " dimension mismatch");
    y += model.components[k].sensing.apply(true_components[k]);
  }
  RngStream rng(seed);
  y += model.sigma_v * rng.normal_vector(model.obs_dim);
  return Observation{std::move(y)};
}

ComponentSpec stack_components(const ComponentSpec& a, const ComponentSpec& b,
                               double relax_eta) {
  detail::require(a.sensing.out_dim() == b.sensing.out_dim(),
                  "stack_components: sensing output dimensions differ");
  const auto* ga = std::get_if<GaussianPrior>(&a.prior);
  const auto* gb = std::get_if<GaussianPrior>(&b.prior);
  detail::require(ga != nullptr && gb != nullptr,
                  "stack_components: product prior only defined for Gaussian priors");
  const int da = a.dim, db = b.dim, m = a.sensing.out_dim();
  Eigen::MatrixXd H(m, da + db);
  H.leftCols(da) = a.sensing.as_matrix();
  H.rightCols(db) = b.sensing.as_matrix();
  GaussianPrior prior;
  prior.mean.resize(da + db);
  prior.mean << ga->mean, gb->mean;
  prior.cov = Eigen::MatrixXd::Zero(da + db, da + db);
  prior.cov.topLeftCorner(da, da) = ga->cov;
  prior.cov.bottomRightCorner(db, db) = gb->cov;
  ComponentSpec out;
  out.dim = da + db;
  out.sensing = SensingOp::dense(std::move(H));
  out.prior = std::move(prior);
  out.relax_eta = relax_eta;
  return out;
}

}  // namespace dig
