#include "sym2lab/qexp.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "sym2lab/arith.hpp"

namespace sym2lab::qexp {

double NewformData::lambda_prime_power(int64_t p, int e) const {
    if (e == 0) return 1.0;
    double lp = (p <= trunc) ? lam(p) : throw std::out_of_range("lambda_prime_power: p beyond table");
    if (p == level) {
        // bad prime: lambda(q^e) = lambda(q)^e
        return std::pow(lp, e);
    }
    double prev = 1.0, cur = lp;
    for (int j = 2; j <= e; ++j) {
        double next = lp * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double NewformData::lambda_at(int64_t n) const {
    if (n <= trunc) return lam(n);
    double v = 1.0;
    for (auto& [p, e] : arith::factorize(n)) v *= lambda_prime_power(p, e);
    return v;
}

namespace {

// exact n^(k-1) as mpz
mpz_class ipow(int64_t n, int e) {
    mpz_class r = 1, b = n;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::shared_ptr<NewformData> build_eta_newform(int64_t q, int64_t N) {
    int64_t a = 24 / (q + 1);
    if (q != 2 && q != 3 && q != 5 && q != 11)
        throw std::invalid_argument("eta_newform: level must be one of 2, 3, 5, 11");

    // eta(z)^a eta(qz)^a = x * B(x) * B(x^q) with B = prod(1-x^n)^a
    IntegerSeries e1 = eta_expansion(1, a, N);
    IntegerSeries eq = eta_expansion(q, a, N);
    IntegerSeries f = e1.multiply(eq);
    if (f.lead24 != 24) throw std::logic_error("eta_newform: leading exponent is not 1");

    auto nf = std::make_shared<NewformData>();
    nf->level = q;
    nf->weight = static_cast<int>(a);
    nf->trunc = std::min<int64_t>(N, f.trunc + 1);
    nf->an.resize(nf->trunc + 1);
    nf->lambda.assign(nf->trunc + 1, 0.0);
    for (int64_t n = 1; n <= nf->trunc; ++n) nf->an[n] = f.coeff(n);

    // lambda(n) = a_n / n^((k-1)/2) = a_n / (n^((k-2)/2) sqrt(n)), in long double
    int m = (nf->weight - 2) / 2;
    for (int64_t n = 1; n <= nf->trunc; ++n) {
        long double den = std::pow(static_cast<long double>(n), static_cast<long double>(m)) *
                          std::sqrt(static_cast<long double>(n));
        long double num = mpz_get_d(nf->an[n].get_mpz_t());
        nf->lambda[n] = static_cast<double>(num / den);
    }
    return nf;
}

}  // namespace

std::shared_ptr<const NewformData> eta_newform(int64_t q, int64_t N) {
    static std::mutex mu;
    static std::map<std::pair<int64_t, int64_t>, std::shared_ptr<const NewformData>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({q, N});
        if (it != cache.end()) return it->second;
    }
    auto nf = build_eta_newform(q, N);
    auto rep = validate_newform(*nf);
    if (!rep.pass)
        throw std::logic_error("eta_newform: invariant check failed: " + rep.first_failure);
    std::shared_ptr<const NewformData> out = nf;
    std::lock_guard<std::mutex> lk(mu);
    cache[{q, N}] = out;
    return out;
}

report::VerificationReport validate_newform(const NewformData& f) {
    report::VerificationReport rep;
    rep.identity = "newform.invariants";
    rep.anchor = "hecke.multiplicativity+deligne+fricke";
    rep.inputs["level"] = f.level;
    rep.inputs["weight"] = f.weight;
    rep.inputs["trunc"] = f.trunc;

    const int64_t N = f.trunc;
    const int64_t q = f.level;
    const int k = f.weight;

    if (f.an[1] != 1) {
        rep.first_failure = "a_1 != 1";
        rep.finalize(1e-12);
        return rep;
    }

    // a_q^2 = q^(k-2), exact
    if (q <= N) {
        mpz_class lhs = f.an[q] * f.an[q];
        if (lhs != ipow(q, k - 2)) {
            rep.first_failure = "a_q^2 != q^(k-2)";
            rep.finalize(1e-12);
            return rep;
        }
    }

    // Deligne: a_p^2 <= 4 p^(k-1) for primes p != q, exact
    for (int64_t p = 2; p <= N; ++p) {
        if (!arith::is_prime(p) || p == q) continue;
        mpz_class lhs = f.an[p] * f.an[p];
        if (lhs > 4 * ipow(p, k - 1)) {
            rep.first_failure = "Deligne bound violated at p=" + std::to_string(p);
            rep.finalize(1e-12);
            return rep;
        }
    }

    // Hecke multiplicativity, integer form:
    // a_n a_m = sum_{d | (n,m), (d,q)=1} d^(k-1) a_(nm/d^2)
    mpz_class lhs, rhs;
    for (int64_t n = 2; n * n <= N; ++n) {
        for (int64_t m = n; n * m <= N; ++m) {
            lhs = f.an[n] * f.an[m];
            rhs = 0;
            int64_t g = std::gcd(n, m);
            for (int64_t d = 1; d <= g; ++d) {
                if (g % d != 0 || d % q == 0) continue;
                rhs += ipow(d, k - 1) * f.an[(n / d) * (m / d)];
            }
            if (lhs != rhs) {
                rep.first_failure = "Hecke relation violated at (n,m)=(" + std::to_string(n) +
                                    "," + std::to_string(m) + ")";
                rep.finalize(1e-12);
                return rep;
            }
        }
    }
    rep.lhs = {1.0, 0.0};
    rep.rhs = {1.0, 0.0};
    rep.finalize(1e-12);
    return rep;
}

}  // namespace sym2lab::qexp
