#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>

namespace dig {

// One splitmix64 step.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// A single random stream. All randomness in the library flows from one root
// seed through RngStream::split(root, index) (counter-based splitting), so
// results are reproducible regardless of thread count: stream `index` always
// produces the same draws for a given root seed.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream split(std::uint64_t root, std::uint64_t index) {
    std::uint64_t s = root + 0x9e3779b97f4a7c15ull * (index + 1);
    return RngStream(splitmix64(s));
  }

  // Derive a child seed without constructing the stream.
  static std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    std::uint64_t s = root + 0x9e3779b97f4a7c15ull * (index + 1);
    return splitmix64(s);
  }

  double normal() { return normal_(engine_); }

  // Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

  Eigen::VectorXd normal_vector(Eigen::Index d) {
    Eigen::VectorXd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = normal();
    return v;
  }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace dig
