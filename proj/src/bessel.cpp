#include "sym2lab/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sym2lab::kernels {

namespace {

// Ascending series sum_j (-1)^j (x/2)^(nu+2j) / (j! (nu+j)!).
// Safe (no destructive cancellation) for x <= ~9.
double series_j(int nu, double x) {
    double half = 0.5 * x;
    double term = 1.0;
    for (int i = 1; i <= nu; ++i) term *= half / static_cast<double>(i);
    double sum = term;
    double x2 = -half * half;
    for (int j = 1; j < 80; ++j) {
        term *= x2 / (static_cast<double>(j) * static_cast<double>(nu + j));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

// Miller's downward recurrence, normalized with J_0 + 2 J_2 + 2 J_4 + ... = 1.
double miller_j(int nu, double x) {
    int start = static_cast<int>(x + 1.5 * std::sqrt(x)) + nu + 40;
    if (start % 2) ++start;
    double jp = 0.0, jc = 1e-300;
    double norm = 0.0, target = 0.0;
    for (int k = start; k >= 1; --k) {
        double jm = (2.0 * k / x) * jc - jp;
        jp = jc;
        jc = jm;
        if (k - 1 == nu) target = jc;
        if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? jc : 2.0 * jc;
        // rescale to avoid overflow of the unnormalized recurrence
        if (std::abs(jc) > 1e250) {
            jc *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            target *= 1e-250;
        }
    }
    return target / norm;
}

}  // namespace

double bessel_j(int nu, double x) {
    if (nu < 0 || nu > 60) throw std::invalid_argument("bessel_j: nu out of range");
    if (x < 0.0 || x > 1e6) throw std::invalid_argument("bessel_j: x out of range");
    if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
    if (x <= 9.0) return series_j(nu, x);
    return miller_j(nu, x);
}

}  // namespace sym2lab::kernels
