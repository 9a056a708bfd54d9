#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sym2lab/report.hpp"
#include "sym2lab/series.hpp"

namespace sym2lab::qexp {

// A holomorphic newform of prime level with exact integer Fourier
// coefficients a_n (n <= trunc) and normalized eigenvalues
// lambda(n) = a_n / n^((k-1)/2).
struct NewformData {
    int64_t level = 0;  // prime q
    int weight = 0;     // even k
    int64_t trunc = 0;
    std::vector<mpz_class> an;    // index 0 unused
    std::vector<double> lambda;   // index 0 unused

    double lam(int64_t n) const { return lambda[static_cast<size_t>(n)]; }

    // lambda at prime powers via the eigenvalue recurrence; p must be <= trunc.
    double lambda_prime_power(int64_t p, int e) const;
    // lambda(n) for n with all prime factors <= trunc (multiplicative build).
    double lambda_at(int64_t n) const;
};

// The eta-product newform eta(z)^a eta(qz)^a of level q in {2, 3, 5, 11},
// weight k = a = 24/(q+1).  All NewformData invariants are verified
// exactly before returning; construction failures throw.
std::shared_ptr<const NewformData> eta_newform(int64_t q, int64_t N = 100000);

// Exhaustive exact checks of the three invariants up to f.trunc:
// Hecke multiplicativity (in integer form a_n a_m = sum d^(k-1) a_(nm/d^2)),
// Deligne |lambda(p)| <= 2 at p != q, and a_q^2 = q^(k-2).
report::VerificationReport validate_newform(const NewformData& f);

}  // namespace sym2lab::qexp
