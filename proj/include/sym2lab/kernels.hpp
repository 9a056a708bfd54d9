#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "sym2lab/bessel.hpp"
#include "sym2lab/bump.hpp"
#include "sym2lab/gamma.hpp"
#include "sym2lab/mellin.hpp"

namespace sym2lab::kernels {

using cplx = std::complex<double>;

// Root of unity attached to the parity alpha in the twisted functional
// equation: 1 for even twists, i for odd twists.
cplx parity_root(int alpha);

// Completed gamma factor of the symmetric-square L-function twisted by a
// primitive character of parity alpha, for a form of weight k:
//   H_alpha(s) = Gamma((s + (1+alpha)/2) / 2) Gamma(s + k - 1) 2^s pi^(-7s/2) b2^s.
// The functional equation reads
//   H_a(s) L(s, sym2 f x conj(chi))
//     = eps * parity_root(a) * conj(chi)(b1) * tau(conj(chi))^3 q^(-3/2)
//       * (q^(3/2))^(1-2s) * H_a(1-s) L(1-s, sym2 f x chi),
// with eps = b1 = b2 = 1 for conductor-q twists.
struct SymSqFE {
    int k = 4;
    int alpha = 1;
    int64_t b2 = 1;

    cplx log_H(cplx s) const;

    // H_alpha(1-s)/H_alpha(s) in log space.  A pole of the denominator
    // yields 0; a pole of the numerator throws.
    cplx h_ratio(cplx s) const;
};

// A numerically realized vertical-line transform.  Two shapes are used:
//
//   V(x)      = (1/2 pi i) int_(sigma)  x^(-s) G(1/2+s)/G(1/2) ds/s
//   K(x)      = (1/2 pi i) int_(-sigma) x^(+s) [H_a(1-s)/H_a(s)] mellin_w(s) ds
//
// with G(s) = pi^(-3s) Gamma(s+2k-3/2) Gamma(s+k-1/2) Gamma(s+1/2).
//
// The dual transform's integrand is analytic in Re s < 1, so the kernel
// carries two lines: a right line near Re s = +0.6 for small arguments
// (no cancellation blow-up) and the left line Re s = -sigma for decay at
// large arguments.  Node weights are precomputed; evaluation at x is a
// discrete inverse Mellin sum.  All kernels here are real-valued.
class ContourKernel {
  public:
    static ContourKernel make_V(int k, double sigma = 0.75, double target_err = 1e-9);

    // Dual-sum kernel from an arbitrary smooth weight on [lo, hi].
    static ContourKernel make_dual(std::function<double(double)> w, double lo, double hi,
                                   int k, int alpha, int64_t b2 = 1,
                                   double sigma = 0.75, double target_err = 1e-8);
    static ContourKernel make_dual(const SmoothBump& bump, int k, int alpha,
                                   double sigma = 0.75, double target_err = 1e-8);

    double operator()(double x) const;

    // |K(x)| <= line_constant() * x^(-sigma) on the decay side
    double line_constant() const { return lines_.back().line_const; }
    double refinement_error() const { return refine_err_; }
    size_t nodes() const;
    double step() const { return lines_.back().h; }

    // max relative disagreement between the (h) and (h/2, same lines)
    // resolutions at the given points
    double refinement_check(const std::vector<double>& xs) const;

  private:
    ContourKernel() = default;

    struct MellGrid {
        bool active = false;
        double u0 = 0.0, delta = 0.0, crude = 0.0;
        std::vector<double> g;
        cplx eval(double t) const;
    };
    struct Line {
        double abscissa = 0.75;
        double h = 0.25;
        std::vector<cplx> w;
        MellGrid grid;
        double line_const = 0.0;
    };

    void build_line(Line& line, double h) const;
    void set_weight_grid(Line& line, const std::function<double(double)>& w,
                         double lo, double hi) const;
    void refine_until(double target_err, double h0, int max_halvings);
    double eval_on(const Line& line, double x) const;
    const Line& pick(double x) const;

    std::function<cplx(cplx)> ratio_;
    double expo_sign_ = -1.0;  // x^(expo_sign * s)
    double switch_x_ = 0.0;    // below this use lines_[0] (right line)
    std::vector<Line> lines_;  // [right (optional), left]
    double refine_err_ = 0.0;
};

// Convenience wrapper with internal caching.
double kernel_V_value(double x, int k, double sigma = 0.75);

}  // namespace sym2lab::kernels
