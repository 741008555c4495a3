#include "dig/fft.hpp"

#include "dig/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace dig {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// FFTW's planner is not thread-safe; plans are cached per length and created
// under a lock. FFTW_UNALIGNED lets fftw_execute_dft run on arbitrary caller
// buffers, and the new-array execute itself is thread-safe.
PlanPair plans_for(int n) {
  static std::mutex planner_mutex;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(planner_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> a(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> b(static_cast<std::size_t>(n));
  auto* ap = reinterpret_cast<fftw_complex*>(a.data());
  auto* bp = reinterpret_cast<fftw_complex*>(b.data());
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(n, ap, bp, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_1d(n, ap, bp, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p.fwd || !p.bwd) throw NumericalError("fftw plan creation failed");
  cache.emplace(n, p);
  return p;
}

}  // namespace

Eigen::VectorXcd unitary_dft(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  detail::require(n > 0, "unitary_dft: empty input");
  Eigen::VectorXcd in = x.cast<std::complex<double>>();
  Eigen::VectorXcd out(n);
  auto p = plans_for(n);
  fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  out /= std::sqrt(static_cast<double>(n));
  return out;
}

Eigen::VectorXd unitary_idft_real(const Eigen::VectorXcd& c) {
  const int n = static_cast<int>(c.size());
  detail::require(n > 0, "unitary_idft_real: empty input");
  Eigen::VectorXcd in = c;
  Eigen::VectorXcd out(n);
  auto p = plans_for(n);
  fftw_execute_dft(p.bwd, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out.real() / std::sqrt(static_cast<double>(n));
}

double dft_bin_frequency(int k, int n, double dt) {
  const int folded = (k <= n / 2) ? k : n - k;
  return static_cast<double>(folded) / (static_cast<double>(n) * dt);
}

}  // namespace dig
