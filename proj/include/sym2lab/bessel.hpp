#pragma once

namespace sym2lab::kernels {

// J_nu(x) for integer nu in [0, 60], x in [0, 1e6].  Power series below
// x = 9, Miller downward recurrence above.  Absolute error < 1e-12.
double bessel_j(int nu, double x);

}  // namespace sym2lab::kernels
