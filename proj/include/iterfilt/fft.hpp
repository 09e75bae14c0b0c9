#pragma once

#include <complex>
#include <span>
#include <vector>

namespace iterfilt::fft {

using Complex = std::complex<double>;

// Unnormalized forward DFT: X_j = sum_k x_k exp(-2 pi i j k / p).
std::vector<Complex> forward(std::span<const double> x);
std::vector<Complex> forward(std::span<const Complex> x);

// Inverse DFT including the 1/p factor; returns the real part.
std::vector<double> inverse_real(std::span<const Complex> X);

}  // namespace iterfilt::fft
