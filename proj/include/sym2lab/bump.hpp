#pragma once

#include <cmath>

namespace sym2lab::kernels {

// C-infinity bump supported on [a, 2a], built from the exp(-1/t) glue:
//   phi(x) = exp(c - c / (4 u (1 - u))),  u = x/a - 1  on (0, 1),
// normalized so max phi = phi(3a/2) = 1.  shape = c controls how fast the
// bump dies at the endpoints; shape = 4 reproduces exp(4 - 1/((x-1)(2-x)))
// on [1, 2].
struct SmoothBump {
    double a = 1.0;
    double shape = 4.0;

    explicit SmoothBump(double a_ = 1.0, double shape_ = 4.0) : a(a_), shape(shape_) {}

    double operator()(double x) const {
        double u = x / a - 1.0;
        if (u <= 0.0 || u >= 1.0) return 0.0;
        double w = 4.0 * u * (1.0 - u);
        double e = shape - shape / w;
        return e < -700.0 ? 0.0 : std::exp(e);
    }

    double derivative(double x) const {
        double u = x / a - 1.0;
        if (u <= 0.0 || u >= 1.0) return 0.0;
        double w = 4.0 * u * (1.0 - u);
        double e = shape - shape / w;
        if (e < -700.0) return 0.0;
        // d/dx [-c/w] = c w'/w^2, w' = (4 - 8u)/a
        return std::exp(e) * shape * (4.0 - 8.0 * u) / (w * w * a);
    }

    double support_lo() const { return a; }
    double support_hi() const { return 2.0 * a; }
};

}  // namespace sym2lab::kernels
