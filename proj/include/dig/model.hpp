#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace dig {

// Known linear map from a component's space (dim d) to observation space
// (dim m). The kind is a structural property: identity components are
// recognized by construction, never by a numerical matrix comparison.
class SensingOp {
public:
  enum class Kind { Identity, Dense, Scaled };

  static SensingOp identity(int d);
  static SensingOp scaled(double c, int d);
  static SensingOp dense(Eigen::MatrixXd H);

  Kind kind() const { return kind_; }
  bool is_identity() const { return kind_ == Kind::Identity; }
  int out_dim() const { return m_; }
  int in_dim() const { return d_; }
  double scale() const { return c_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& y) const;
  // HᵀH, d×d.
  Eigen::MatrixXd gram() const;
  // Dense m×d realization, for oracles and stacking.
  Eigen::MatrixXd as_matrix() const;

private:
  SensingOp(Kind k, int m, int d) : kind_(k), m_(m), d_(d) {}

  Kind kind_;
  int m_ = 0;
  int d_ = 0;
  double c_ = 1.0;
  Eigen::MatrixXd matrix_;
};

// ---------------------------------------------------------------------------
// Priors. Analytic ones carry their parameters; External points to a
// subprocess denoiser (see ExternalDenoiser).

struct GaussianPrior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

struct GaussianMixturePrior {
  Eigen::VectorXd weights;
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covs;
};

// Quadratic smoothness penalty lambda * ||D s||^2 with D the 1-d forward
// difference operator (d-1 rows, no wraparound).
struct SmoothnessPrior {
  double lambda = 0.0;
};

// Frequency-sparsity penalty lambda * ||F s||_1 with F the unitary DFT.
struct FourierSparsityPrior {
  double lambda = 0.0;
};

// Denoiser supplied by an external process speaking the byte protocol
// documented in the README.
struct ExternalPrior {
  std::vector<std::string> command;
  double eta_min = 0.0;
  double eta_max = std::numeric_limits<double>::infinity();
};

using Prior = std::variant<GaussianPrior, GaussianMixturePrior, SmoothnessPrior,
                           FourierSparsityPrior, ExternalPrior>;

// ---------------------------------------------------------------------------

struct ComponentSpec {
  int dim = 0;
  SensingOp sensing = SensingOp::identity(0);
  Prior prior;
  // Relaxation level eta_k; must be > 0 exactly when sensing is not identity.
  double relax_eta = 0.0;
};

struct MixtureModel {
  std::vector<ComponentSpec> components;
  double sigma_v = 1.0;
  int obs_dim = 0;

  int num_components() const { return static_cast<int>(components.size()); }
  // Indices whose sensing operator is not the identity (derived, structural).
  std::vector<int> relaxed_indices() const;
  bool is_relaxed(int k) const { return !components.at(static_cast<std::size_t>(k)).sensing.is_identity(); }
  int total_dim() const;
};

struct Observation {
  Eigen::VectorXd y;
};

// ---------------------------------------------------------------------------
// Operations

// Returns one message per violated invariant, empty when the model is valid.
// Messages name the component index and the violated rule.
std::vector<std::string> validate_model(const MixtureModel& model);

// Throws ConfigError listing all violations when the model is invalid.
void validate_model_or_throw(const MixtureModel& model);

// y = sum_k H_k s_k + v, v ~ N(0, sigma_v^2 I). Pure function of
// (model, true_components, seed).
Observation simulate_observation(const MixtureModel& model,
                                 const std::vector<Eigen::VectorXd>& true_components,
                                 std::uint64_t seed);

// Stacks two component specs into one: block sensing [Ha Hb], product prior
// (requires both priors Gaussian). Used for correlated groups that the caller
// wants to model jointly.
ComponentSpec stack_components(const ComponentSpec& a, const ComponentSpec& b,
                               double relax_eta);

// Checks that cov is symmetric within 1e-10 and admits a Cholesky factorization.
bool is_spd(const Eigen::MatrixXd& cov);

}  // namespace dig
