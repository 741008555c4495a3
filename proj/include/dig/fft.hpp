#pragma once

#include <Eigen/Core>

#include <complex>

namespace dig {

// Unitary DFT (normalization 1/sqrt(n) both ways) of a real vector, any length.
Eigen::VectorXcd unitary_dft(const Eigen::VectorXd& x);

// Inverse unitary DFT; the caller guarantees the spectrum is conjugate
// symmetric, the imaginary part is discarded.
Eigen::VectorXd unitary_idft_real(const Eigen::VectorXcd& c);

// Frequency in Hz of DFT bin k for n samples at spacing dt seconds.
double dft_bin_frequency(int k, int n, double dt);

}  // namespace dig
