#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace sym2lab::qexp {

// Truncated integer power series with an attached fractional leading
// exponent in units of 1/24, so eta products can be combined exactly:
//   series = x^(lead24/24) * sum_{j=0..trunc} c[j] x^j.
// Ring operations never silently exceed the truncation: products carry
// min-truncation bookkeeping.
struct IntegerSeries {
    int64_t lead24 = 0;
    int64_t trunc = 0;            // c[j] valid for 0 <= j <= trunc
    std::vector<mpz_class> c;

    bool integral() const { return lead24 % 24 == 0; }

    // coefficient of x^n (absolute power); requires integral()
    const mpz_class& coeff(int64_t n) const;

    IntegerSeries multiply(const IntegerSeries& other) const;
};

// Pentagonal-number expansion of prod_{n>=1} (1 - x^n) up to x^N
// (sparse; O(sqrt N) nonzero terms).
IntegerSeries pentagonal_series(int64_t N);

// prod (1 - x^n)^e up to x^N via the logarithmic-derivative recurrence
// against the sparse pentagonal series:
//   n c_n = sum_{j in supp} p_j ((e+1) j - n) c_{n-j}.
IntegerSeries pentagonal_power(int64_t e, int64_t N);

// q-expansion of eta(scale*z)^exponent up to absolute order N.
IntegerSeries eta_expansion(int64_t scale, int64_t exponent, int64_t N);

// Dense product helpers (exact; modular NTT with CRT reconstruction and a
// provably sufficient prime set, falling back to direct multiplication
// when the coefficient bound cannot be certified).
std::vector<mpz_class> convolve_exact(const std::vector<mpz_class>& a,
                                      const std::vector<mpz_class>& b,
                                      int64_t out_len);
std::vector<mpz_class> convolve_direct(const std::vector<mpz_class>& a,
                                       const std::vector<mpz_class>& b,
                                       int64_t out_len);

}  // namespace sym2lab::qexp
