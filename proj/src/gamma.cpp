#include "sym2lab/gamma.hpp"

#include <cmath>
#include <limits>

namespace sym2lab::kernels {

namespace {

// Lanczos g = 607/128, n = 15 (Godfrey's coefficients).  Good to ~1e-14
// relative on the right half plane in double precision.
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosCoef[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};
constexpr double kLogSqrtTwoPi = 0.91893853320467274178;
constexpr double kPi = 3.14159265358979323846264338327950288;

std::complex<double> log_gamma_right(std::complex<double> s) {
    // valid for Re(s) >= 0.5
    std::complex<double> acc = kLanczosCoef[0];
    for (int i = 1; i < 15; ++i) acc += kLanczosCoef[i] / (s + static_cast<double>(i - 1));
    std::complex<double> t = s + (kLanczosG - 0.5);
    return kLogSqrtTwoPi + (s - 0.5) * std::log(t) - t + std::log(acc);
}

// log sin(pi s) without overflow for large |Im s|, continuous enough for
// use inside exp() (any 2*pi*i ambiguity cancels there).
std::complex<double> log_sin_pi(std::complex<double> s) {
    if (std::abs(s.imag()) < 20.0) return std::log(std::sin(kPi * s));
    const std::complex<double> ipi(0.0, kPi);
    if (s.imag() > 0.0)
        return -ipi * s + std::log((std::exp(2.0 * ipi * s) - 1.0) / std::complex<double>(0.0, 2.0));
    return ipi * s + std::log((1.0 - std::exp(-2.0 * ipi * s)) / std::complex<double>(0.0, 2.0));
}

}  // namespace

bool is_gamma_pole(std::complex<double> s, double tol) {
    if (s.imag() != 0.0 && std::abs(s.imag()) > tol) return false;
    double r = std::round(s.real());
    return r <= 0.0 && std::abs(s.real() - r) <= tol;
}

std::complex<double> log_gamma(std::complex<double> s) {
    if (is_gamma_pole(s))
        return {std::numeric_limits<double>::infinity(), 0.0};
    if (s.real() >= 0.5) return log_gamma_right(s);
    // reflection: log Gamma(s) = log pi - log sin(pi s) - log Gamma(1 - s)
    return std::log(kPi) - log_sin_pi(s) - log_gamma_right(1.0 - s);
}

std::complex<double> complex_gamma(std::complex<double> s) {
    if (is_gamma_pole(s))
        return {std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
    return std::exp(log_gamma(s));
}

}  // namespace sym2lab::kernels
