#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "sym2lab/qexp.hpp"

namespace sym2lab::coeffs {

using cplx = std::complex<double>;

// Direct divisor-sum definition A(n,1) = sum_{d1^2 d2 | n} lambda(d2^2).
// Used as the oracle for the sieved table below.
double sym2_coeff(const qexp::NewformData& f, int64_t n);

// Table of A(n,1) built multiplicatively from prime powers
//   A(p^e, 1) = sum_{2i + j <= e} lambda(p^(2j)).
// Entries at multiples of the level are defined by the same formula but
// flagged; the identity sums in this project never consume them.
class Sym2CoeffTable {
  public:
    Sym2CoeffTable(std::shared_ptr<const qexp::NewformData> f, int64_t limit);

    double A1(int64_t n) const;              // rejects flagged (q | n) entries
    double A1_unchecked(int64_t n) const;    // raw table value
    bool flagged(int64_t n) const { return n % f_->level == 0; }
    int64_t limit() const { return static_cast<int64_t>(a1_.size()) - 1; }
    const qexp::NewformData& form() const { return *f_; }
    std::shared_ptr<const qexp::NewformData> form_ptr() const { return f_; }

    // grow the table (not thread safe; tables are grown before sharing)
    void ensure(int64_t limit);

    // Rankin coefficient A(n,m) = sum_{d|(n,m)} mu(d) A(n/d,1) A(m/d,1),
    // defined for gcd(nm, q) = 1.
    double rankin(int64_t n, int64_t m) const;

  private:
    void rebuild(int64_t limit);
    std::shared_ptr<const qexp::NewformData> f_;
    std::vector<double> a1_;
};

// Truncated Dirichlet series of the symmetric square:
//   (1 - q^(-s-1))^(-1) sum_{n<=X, (n,q)=1} A(n,1) n^(-s)
// plus a divisor-majorant bound on the dropped tail.
struct DirichletPartial {
    cplx value;
    double tail_bound;     // sum_{n>X} d_3(n) n^(-Re s), Rankin-style bound
    bool warned_region;    // Re s <= 1
};
DirichletPartial sym2_dirichlet_partial(const Sym2CoeffTable& t, cplx s, int64_t X);

// Smoothed value of L(1, sym^2 f): completion factor times
// sum A(n,1) exp(-n/X) / n.  Truncation error decays like X^(-1/2).
double sym2_L1_smoothed(const Sym2CoeffTable& t, int64_t X);

// Same smoothed sum for a coefficient table given directly (data-supplied
// eigenvalues).
double sym2_L1_smoothed(int64_t level, const std::vector<double>& A1, int64_t X);

// Degree-D check of the local-factor identity: the truncated series
// sum_j A(p^j,1) chi(p)^j X^j times
// (1 - A(p,1) chi(p) X + A(p,1) chi(p^2) X^2 - chi(p^3) X^3)
// must be 1 + O(X^(D-2)).  Returns max |coefficient - [j=0]| for j <= D-3.
double local_factor_identity(const qexp::NewformData& f, int64_t p,
                             cplx chi_p, cplx chi_p2, cplx chi_p3, int D);

}  // namespace sym2lab::coeffs
