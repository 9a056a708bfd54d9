#pragma once

#include <complex>
#include <functional>

namespace sym2lab::kernels {

// Mellin transform int_lo^hi f(x) x^(s-1) dx of a smooth function on a
// compact interval, by trapezoid refinement.  For C-infinity integrands
// vanishing to all orders at the endpoints the trapezoid rule converges
// super-algebraically; for generic smooth integrands the refinement loop
// still terminates on the requested tolerance via Richardson comparison.
struct MellinResult {
    std::complex<double> value;
    double error_estimate;
    bool converged;
};

MellinResult mellin_transform(const std::function<double(double)>& f,
                              double lo, double hi, std::complex<double> s,
                              double rel_tol = 1e-13, int max_doublings = 18);

}  // namespace sym2lab::kernels
