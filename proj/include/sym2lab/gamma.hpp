#pragma once

#include <complex>

namespace sym2lab::kernels {

// Principal-branch log Gamma, Lanczos approximation plus reflection for
// Re(s) < 0.5.  Relative accuracy ~1e-13 for |Im s| <= 200.  At a pole
// (non-positive integer) the real part is +inf.
std::complex<double> log_gamma(std::complex<double> s);

// Gamma(s) = exp(log_gamma(s)); returns inf at poles.
std::complex<double> complex_gamma(std::complex<double> s);

bool is_gamma_pole(std::complex<double> s, double tol = 1e-12);

}  // namespace sym2lab::kernels
