#pragma once

// Exact modular arithmetic, Dirichlet characters and exponential sums
// (Kloosterman sums, Gauss sums, and the hybrid character averages that
// reduce to Kloosterman sums at prime modulus).
//
// Characters are stored through discrete-log tables: a character group
// holds one table per prime-power factor of the modulus, and a character
// is a tuple of indices against those tables.  Evaluation reduces to one
// exact rational phase r/L with L = lcm of the component orders, so
// orthogonality relations hold to machine precision.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace sym2lab::arith {

using cplx = std::complex<double>;

int64_t mod_pow(int64_t base, int64_t exp, int64_t m);
int64_t mod_inverse(int64_t a, int64_t m);  // requires gcd(a, m) = 1
int64_t gcd64(int64_t a, int64_t b);

// Smallest positive primitive root mod p^e (p odd prime) or mod 2, 4.
int64_t smallest_primitive_root(int64_t pe);

bool is_prime(int64_t n);
std::vector<std::pair<int64_t, int>> factorize(int64_t n);

// Residue class with an attached modulus.  Inversion requires the class
// to be a unit.
struct Residue {
    int64_t value = 0;
    int64_t modulus = 1;

    Residue() = default;
    Residue(int64_t v, int64_t m);

    Residue inverse() const;
    bool is_unit() const { return gcd64(value, modulus) == 1; }
};

namespace detail {
struct CharComponent {
    int64_t pe = 1;       // prime power p^e
    int64_t p = 1;
    int e = 0;
    int64_t order = 1;    // order of the cyclic part this table indexes
    // odd p (and 2^1, 2^2): dlog over a generator, size pe, -1 at non-units.
    // 2^e, e >= 3: dlog of the <5> part; sign_bit handled separately.
    std::vector<int32_t> dlog;
    std::vector<int8_t> sign_bit;  // only for 2^e, e >= 3
    int64_t generator = 0;
};

struct CharacterGroup {
    int64_t modulus = 1;
    int64_t phi = 1;
    int64_t phase_lcm = 1;  // lcm of all component orders (and the 2^e sign part)
    std::vector<CharComponent> components;
    bool has_sign_component = false;  // 2^e with e >= 2 contributes a +-1 part
    std::vector<cplx> roots;          // e(r / phase_lcm) for r in [0, phase_lcm)
};
}  // namespace detail

// A Dirichlet character mod m.  Immutable and cheap to copy; the dlog
// tables are shared between all characters of the same modulus.
class DirichletCharacter {
  public:
    DirichletCharacter() = default;

    cplx operator()(int64_t n) const;

    int64_t modulus() const { return group_ ? group_->modulus : 1; }
    bool is_principal() const;
    bool is_primitive() const;
    int64_t conductor() const;
    int parity() const;  // chi(-1), +1 or -1
    DirichletCharacter conjugate() const;

    // Stable label of the index tuple, for reports.
    std::string label() const;

    static DirichletCharacter principal(int64_t m);

  private:
    friend std::vector<DirichletCharacter> enumerate_characters(int64_t m);
    std::shared_ptr<const detail::CharacterGroup> group_;
    std::vector<int64_t> indices_;  // one per component; 2^e (e>=3) uses two slots
};

// All phi(m) characters mod m, principal character first, each tagged with
// parity and primitivity.  m must factor by trial division (m < 10^7).
std::vector<DirichletCharacter> enumerate_characters(int64_t m);

// Kloosterman sum S(a, b; c) over primitive residue classes h mod c.
// Always real; compensated summation keeps the cancellation error near
// machine precision for c up to a few thousand.
double kloosterman(int64_t a, int64_t b, int64_t c);

// S(w, 1; M) for every residue w mod M in one pass (a length-M DFT of the
// unit-supported vector e(hbar/M)).  Used when many sums at one modulus
// are needed; agrees with kloosterman() to ~1e-10 absolute.
std::vector<double> kloosterman_row(int64_t M);

// S(m, n; M) assembled from rows at divisor moduli via the identity
// S(m,n;M) = sum_{d | (m,n,M)} d * S(mn/d^2, 1; M/d).
// rows[j] must be the row for modulus M/d_j as produced by kloosterman_row.
double kloosterman_from_rows(int64_t m, int64_t n, int64_t M,
                             const std::vector<std::pair<int64_t, const std::vector<double>*>>& rows);

// Gauss sum tau(chi) = sum_a chi(a) e(a/m).
cplx gauss_sum(const DirichletCharacter& chi);

// Parity-restricted average of chi1(u*n) tau(chi1) tau(conj(chi1))^3 over
// primitive chi1 mod q with chi1(-1) = alpha * chi2_parity, in closed form:
//   q(q-1)/2 * ( S(-un,1;q) + beta S(un,1;q) ) - q(1+beta)/2,  beta = alpha*chi2_parity,
// and 0 when q | n.
double twisted_kloosterman_average(int64_t q, const Residue& u, int alpha,
                                   int chi2_parity, int64_t n);

// max over both signs of |sum*_{h mod q} e(hbar c / q) S(+-hbar*inv(d1*a1)*b1*c2*n, 1; q)| / q.
// Bounded by (q+1)/q <= 2 for gcd(n, q) = 1.
double h_sum_bound_check(int64_t q, int64_t c, int64_t d1, int64_t a1,
                         int64_t b1, int64_t c2, int64_t n);

}  // namespace sym2lab::arith
