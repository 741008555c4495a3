#pragma once

namespace dig {

// Noise schedule of the forward diffusion: injection rate g(t) and cumulative
// noise standard deviation sigma(t) = sqrt(∫₀ᵗ g(s)² ds) on [0, T].
// Both kinds have closed-form sigma and sigma_inv.
class NoiseSchedule {
public:
  enum class Kind { Constant, Exponential };

  // g(t) = g0.
  static NoiseSchedule constant(double g0, double T);
  // g(t) = alpha^t, alpha > 1.
  static NoiseSchedule exponential(double alpha, double T);

  Kind kind() const { return kind_; }
  double terminal_time() const { return T_; }
  double max_sigma() const { return sigma(T_); }
  double alpha() const { return param_; }
  double g0() const { return param_; }

  double g(double t) const;
  double sigma(double t) const;
  // Inverse of sigma; throws when eta exceeds sigma(T) (the caller must
  // enlarge T).
  double sigma_inv(double eta) const;

private:
  NoiseSchedule(Kind k, double p, double T) : kind_(k), param_(p), T_(T) {}

  Kind kind_;
  double param_;
  double T_;
};

// Cosine-shaped annealing schedule over sweeps i = 0..N:
//   value(i) = v_min + (v_max - v_min) * cos²( ((i/N + eps)/(1 + eps)) * π/2 ),
// frozen at exactly v_min for all i >= freeze_at (default freeze_at = N), so
// the annealed parameter terminates at its nominal value.
class AnnealSchedule {
public:
  AnnealSchedule(double v_max, double v_min, int n_sweeps, double eps = 0.008,
                 int freeze_at = -1);

  // Flat schedule: the nominal value at every sweep.
  static AnnealSchedule flat(double v, int n_sweeps);

  double value(int i) const;
  double v_max() const { return v_max_; }
  double v_min() const { return v_min_; }
  int n_sweeps() const { return n_; }
  int freeze_at() const { return freeze_at_; }
  double eps() const { return eps_; }

private:
  double v_max_;
  double v_min_;
  int n_;
  double eps_;
  int freeze_at_;
};

}  // namespace dig
