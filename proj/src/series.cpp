#include "sym2lab/series.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace sym2lab::qexp {

const mpz_class& IntegerSeries::coeff(int64_t n) const {
    if (!integral()) throw std::logic_error("IntegerSeries::coeff: fractional leading exponent");
    static const mpz_class zero = 0;
    int64_t j = n - lead24 / 24;
    if (j < 0) return zero;
    if (j > trunc) throw std::out_of_range("IntegerSeries::coeff: beyond truncation");
    return c[j];
}

IntegerSeries pentagonal_series(int64_t N) {
    IntegerSeries s;
    s.trunc = N;
    s.c.assign(N + 1, mpz_class(0));
    s.c[0] = 1;
    for (int64_t j = 1;; ++j) {
        int64_t g1 = j * (3 * j - 1) / 2;
        int64_t g2 = j * (3 * j + 1) / 2;
        if (g1 > N && g2 > N) break;
        int sign = (j % 2) ? -1 : 1;
        if (g1 <= N) s.c[g1] = sign;
        if (g2 <= N) s.c[g2] = sign;
    }
    return s;
}

IntegerSeries pentagonal_power(int64_t e, int64_t N) {
    if (e < 1) throw std::invalid_argument("pentagonal_power: e >= 1");
    // sparse support of the pentagonal series
    std::vector<std::pair<int64_t, int>> supp;  // (j, p_j)
    for (int64_t j = 1;; ++j) {
        int64_t g1 = j * (3 * j - 1) / 2;
        int64_t g2 = j * (3 * j + 1) / 2;
        if (g1 > N && g2 > N) break;
        int sign = (j % 2) ? -1 : 1;
        if (g1 <= N) supp.emplace_back(g1, sign);
        if (g2 <= N) supp.emplace_back(g2, sign);
    }
    std::sort(supp.begin(), supp.end());

    IntegerSeries out;
    out.trunc = N;
    out.c.assign(N + 1, mpz_class(0));
    out.c[0] = 1;
    mpz_class acc;
    for (int64_t n = 1; n <= N; ++n) {
        acc = 0;
        for (auto& [j, pj] : supp) {
            if (j > n) break;
            int64_t mult = (e + 1) * j - n;  // fits easily in int64 for our ranges
            if (pj > 0) {
                if (mult >= 0)
                    mpz_addmul_ui(acc.get_mpz_t(), out.c[n - j].get_mpz_t(), mult);
                else
                    mpz_submul_ui(acc.get_mpz_t(), out.c[n - j].get_mpz_t(), -mult);
            } else {
                if (mult >= 0)
                    mpz_submul_ui(acc.get_mpz_t(), out.c[n - j].get_mpz_t(), mult);
                else
                    mpz_addmul_ui(acc.get_mpz_t(), out.c[n - j].get_mpz_t(), -mult);
            }
        }
        mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), n);
        out.c[n] = acc;
    }
    return out;
}

IntegerSeries eta_expansion(int64_t scale, int64_t exponent, int64_t N) {
    if (scale < 1 || exponent < 1)
        throw std::invalid_argument("eta_expansion: scale and exponent must be >= 1");
    int64_t lead24 = scale * exponent;  // eta(scale z)^e = x^(scale e/24) prod(1-x^(scale n))^e
    int64_t lead_floor = lead24 / 24;   // integral part consumed by the truncation budget
    int64_t tail_n = (N - lead_floor) / scale;
    if (tail_n < 0) tail_n = 0;
    IntegerSeries pw = pentagonal_power(exponent, tail_n);
    IntegerSeries out;
    out.lead24 = lead24;
    out.trunc = N - lead_floor;
    out.c.assign(out.trunc + 1, mpz_class(0));
    for (int64_t j = 0; j <= tail_n; ++j)
        if (j * scale <= out.trunc) out.c[j * scale] = pw.c[j];
    return out;
}

// ---------------------------------------------------------------------------
// Exact dense products
// ---------------------------------------------------------------------------

namespace {

// NTT-friendly primes, all = 1 mod 2^21.
constexpr std::array<uint64_t, 5> kNttPrimes = {998244353ull, 1004535809ull, 469762049ull,
                                                167772161ull, 754974721ull};
constexpr std::array<uint64_t, 5> kNttRoots = {3ull, 3ull, 3ull, 3ull, 11ull};

uint64_t pw(uint64_t b, uint64_t e, uint64_t m) {
    unsigned __int128 r = 1, bb = b % m;
    while (e) {
        if (e & 1) r = r * bb % m;
        bb = bb * bb % m;
        e >>= 1;
    }
    return static_cast<uint64_t>(r);
}

void ntt(std::vector<uint64_t>& a, uint64_t p, uint64_t g, bool inverse) {
    size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        uint64_t w = pw(g, (p - 1) / len, p);
        if (inverse) w = pw(w, p - 2, p);
        for (size_t i = 0; i < n; i += len) {
            uint64_t wn = 1;
            for (size_t j = 0; j < len / 2; ++j) {
                uint64_t u = a[i + j];
                uint64_t v = static_cast<uint64_t>(
                    static_cast<unsigned __int128>(a[i + j + len / 2]) * wn % p);
                a[i + j] = u + v < p ? u + v : u + v - p;
                a[i + j + len / 2] = u >= v ? u - v : u + p - v;
                wn = static_cast<uint64_t>(static_cast<unsigned __int128>(wn) * w % p);
            }
        }
    }
    if (inverse) {
        uint64_t ninv = pw(n % p, p - 2, p);
        for (auto& x : a)
            x = static_cast<uint64_t>(static_cast<unsigned __int128>(x) * ninv % p);
    }
}

std::vector<uint64_t> reduce_mod(const std::vector<mpz_class>& a, uint64_t p, size_t n) {
    std::vector<uint64_t> r(n, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t v = mpz_fdiv_ui(a[i].get_mpz_t(), p);  // in [0, p)
        r[i] = v;
    }
    return r;
}

}  // namespace

std::vector<mpz_class> convolve_direct(const std::vector<mpz_class>& a,
                                       const std::vector<mpz_class>& b,
                                       int64_t out_len) {
    std::vector<mpz_class> out(out_len, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        size_t jmax = std::min<size_t>(b.size(), out_len - i);
        for (size_t j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    return out;
}

std::vector<mpz_class> convolve_exact(const std::vector<mpz_class>& a,
                                      const std::vector<mpz_class>& b,
                                      int64_t out_len) {
    // certify that 5-prime CRT covers the result:
    // |c_n| <= min(len_a, len_b) * max|a| * max|b| must stay below prod(p)/2
    mpz_class ma = 0, mb = 0;
    for (auto& x : a) { mpz_class ax = abs(x); if (ax > ma) ma = ax; }
    for (auto& x : b) { mpz_class bx = abs(x); if (bx > mb) mb = bx; }
    mpz_class prod = 1;
    for (uint64_t p : kNttPrimes) prod *= mpz_class(static_cast<unsigned long>(p));
    mpz_class bound = ma * mb * static_cast<unsigned long>(std::min(a.size(), b.size()));
    if (2 * bound >= prod || a.size() < 64 || b.size() < 64)
        return convolve_direct(a, b, out_len);

    size_t need = a.size() + b.size() - 1;
    size_t n = 1;
    while (n < need) n <<= 1;

    std::vector<std::vector<uint64_t>> residues;
    residues.reserve(kNttPrimes.size());
    for (size_t t = 0; t < kNttPrimes.size(); ++t) {
        uint64_t p = kNttPrimes[t], g = kNttRoots[t];
        auto fa = reduce_mod(a, p, n);
        auto fb = reduce_mod(b, p, n);
        ntt(fa, p, g, false);
        ntt(fb, p, g, false);
        for (size_t i = 0; i < n; ++i)
            fa[i] = static_cast<uint64_t>(static_cast<unsigned __int128>(fa[i]) * fb[i] % p);
        ntt(fa, p, g, true);
        residues.push_back(std::move(fa));
    }

    // CRT: c = sum r_i * (prod/p_i) * inv(prod/p_i mod p_i)  (mod prod)
    std::vector<mpz_class> basis(kNttPrimes.size());
    for (size_t t = 0; t < kNttPrimes.size(); ++t) {
        uint64_t p = kNttPrimes[t];
        mpz_class mi = prod / static_cast<unsigned long>(p);
        uint64_t mi_mod = mpz_fdiv_ui(mi.get_mpz_t(), p);
        uint64_t yi = pw(mi_mod, p - 2, p);
        basis[t] = mi * static_cast<unsigned long>(yi);
    }
    mpz_class half = prod / 2;
    std::vector<mpz_class> out(out_len, mpz_class(0));
    mpz_class acc;
    size_t lim = std::min<size_t>(out_len, need);
    for (size_t i = 0; i < lim; ++i) {
        acc = 0;
        for (size_t t = 0; t < kNttPrimes.size(); ++t)
            if (residues[t][i])
                mpz_addmul_ui(acc.get_mpz_t(), basis[t].get_mpz_t(), residues[t][i]);
        acc %= prod;
        if (acc > half) acc -= prod;
        out[i] = acc;
    }
    return out;
}

IntegerSeries IntegerSeries::multiply(const IntegerSeries& other) const {
    IntegerSeries out;
    out.lead24 = lead24 + other.lead24;
    out.trunc = std::min(trunc, other.trunc);
    out.c = convolve_exact(c, other.c, out.trunc + 1);
    return out;
}

}  // namespace sym2lab::qexp
