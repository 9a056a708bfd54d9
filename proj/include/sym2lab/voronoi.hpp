#pragma once

#include <complex>
#include <memory>

#include "sym2lab/arith.hpp"
#include "sym2lab/coeffs.hpp"
#include "sym2lab/kernels.hpp"
#include "sym2lab/qexp.hpp"
#include "sym2lab/report.hpp"

namespace sym2lab::voronoi {

using cplx = std::complex<double>;

// One instance of the prime-level summation identity for the GL(3)
// symmetric-square coefficients:
//
//   sum_{(n,q)=1} A(n,1) e(nh/q) phi(n)
//     = (q/2) sum_{alpha=+-1} i^((1-alpha)/2) sum_{(n,q)=1} (A(n,1)/n)
//               [ S(-n hbar,1;q) + alpha S(n hbar,1;q) ] Phi_alpha(n/q^3)
//       - sum_{(n,q)=1} (A(n,1)/(q-1)) [ phi(n) + (q/n) Phi_{+1}(n/q^3) ],
//
// where Phi_alpha is the dual contour kernel built from phi and the
// parity-alpha gamma factor of weight k.
struct VoronoiInstance {
    std::shared_ptr<const qexp::NewformData> f;
    int64_t h = 1;
    kernels::SmoothBump phi{25.0, 4.0};  // support [N, 2N]
    double tolerance = 1e-6;
    double sigma = 0.75;
    int64_t t_dual_cap = 4000000;
};

// Exact finite sum over the support of phi.
cplx voronoi_lhs(const VoronoiInstance& inst);
cplx voronoi_lhs(const VoronoiInstance& inst, coeffs::Sym2CoeffTable& table);

struct DualSide {
    cplx value;             // full right-hand side
    cplx trivial_correction;  // the subtracted correction sum (already in value)
    int64_t t_dual;
    double tail_estimate;      // empirical decay-model bound on the dropped tail
    double tail_line_norm;     // rigorous sigma=4 line-norm bound (loose)
    double kernel_refine_err;
};

// Dual-sum evaluation with adaptive truncation.  Throws when the cap is
// reached before the tail model clears tolerance/10.
DualSide voronoi_rhs(const VoronoiInstance& inst, coeffs::Sym2CoeffTable& table);

report::VerificationReport verify_voronoi(const VoronoiInstance& inst);

// Twisted functional-equation check for a primitive character mod q:
// direct smoothed sum sum A(n,1) conj(chi)(n) W(n/N) against
// i^((1-alpha)/2) tau(conj(chi))^3 sum (A(n,1)/n) chi(n) W_alpha(n N / q^3).
// The report's lhs/rhs fields carry the two sides.
report::VerificationReport verify_twisted_fe(std::shared_ptr<const qexp::NewformData> f,
                                             const arith::DirichletCharacter& chi,
                                             double N, double tolerance = 1e-6,
                                             double shape = 4.0);

}  // namespace sym2lab::voronoi
