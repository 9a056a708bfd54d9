#include "sym2lab/arith.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sym2lab::arith {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// Neumaier-compensated accumulator.
struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double get() const { return s + c; }
};
}  // namespace

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t mod_pow(int64_t base, int64_t exp, int64_t m) {
    if (m <= 0) throw std::invalid_argument("mod_pow: modulus must be positive");
    base %= m;
    if (base < 0) base += m;
    unsigned __int128 r = 1, b = static_cast<unsigned __int128>(base);
    while (exp > 0) {
        if (exp & 1) r = (r * b) % m;
        b = (b * b) % m;
        exp >>= 1;
    }
    return static_cast<int64_t>(r);
}

int64_t mod_inverse(int64_t a, int64_t m) {
    a %= m;
    if (a < 0) a += m;
    int64_t g = m, x = 0, x1 = 1, a1 = a;
    while (a1 != 0) {
        int64_t qq = g / a1;
        g -= qq * a1;
        std::swap(g, a1);
        x -= qq * x1;
        std::swap(x, x1);
    }
    if (g != 1) throw std::domain_error("mod_inverse: argument is not a unit");
    x %= m;
    if (x < 0) x += m;
    return x;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
    if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<int64_t, int>> f;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            f.emplace_back(d, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

int64_t smallest_primitive_root(int64_t pe) {
    if (pe == 2) return 1;
    if (pe == 4) return 3;
    auto fac = factorize(pe);
    if (fac.size() != 1 || fac[0].first == 2)
        throw std::invalid_argument("smallest_primitive_root: need an odd prime power (or 2, 4)");
    int64_t p = fac[0].first;
    int64_t phi = pe / p * (p - 1);
    auto phifac = factorize(phi);
    for (int64_t g = 2; g < pe; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto& [r, e] : phifac) {
            (void)e;
            if (mod_pow(g, phi / r, pe) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw std::logic_error("smallest_primitive_root: none found");
}

Residue::Residue(int64_t v, int64_t m) : modulus(m) {
    if (m <= 0) throw std::invalid_argument("Residue: modulus must be positive");
    value = v % m;
    if (value < 0) value += m;
}

Residue Residue::inverse() const { return Residue(mod_inverse(value, modulus), modulus); }

// ---------------------------------------------------------------------------
// Character groups
// ---------------------------------------------------------------------------

namespace {

detail::CharComponent make_component(int64_t p, int e) {
    detail::CharComponent c;
    c.p = p;
    c.e = e;
    c.pe = 1;
    for (int i = 0; i < e; ++i) c.pe *= p;

    if (p != 2) {
        c.generator = smallest_primitive_root(c.pe);
        c.order = c.pe / p * (p - 1);
        c.dlog.assign(c.pe, -1);
        int64_t x = 1;
        for (int64_t t = 0; t < c.order; ++t) {
            c.dlog[x] = static_cast<int32_t>(t);
            x = static_cast<int64_t>((static_cast<unsigned __int128>(x) * c.generator) % c.pe);
        }
        return c;
    }

    // p = 2: trivial for 2^1; {+-1} for 4; {+-1} x <5> for 2^e, e >= 3.
    if (e == 1) {
        c.order = 1;
        c.dlog.assign(2, -1);
        c.dlog[1] = 0;
    } else if (e == 2) {
        c.order = 2;
        c.dlog.assign(4, -1);
        c.dlog[1] = 0;
        c.dlog[3] = 1;
    } else {
        c.order = c.pe / 4;  // order of 5 mod 2^e
        c.dlog.assign(c.pe, -1);
        c.sign_bit.assign(c.pe, 0);
        int64_t x = 1;
        for (int64_t t = 0; t < c.order; ++t) {
            c.dlog[x] = static_cast<int32_t>(t);
            c.dlog[c.pe - x] = static_cast<int32_t>(t);
            c.sign_bit[c.pe - x] = 1;
            x = (x * 5) % c.pe;
        }
    }
    return c;
}

std::shared_ptr<detail::CharacterGroup> make_group(int64_t m) {
    auto g = std::make_shared<detail::CharacterGroup>();
    g->modulus = m;
    g->phi = 1;
    g->phase_lcm = 1;
    for (auto& [p, e] : factorize(m)) {
        auto c = make_component(p, e);
        g->phi *= (p == 2 && e >= 2) ? 2 * c.order : c.order;
        g->phase_lcm = std::lcm(g->phase_lcm, c.order);
        if (p == 2 && e >= 2) {
            g->phase_lcm = std::lcm<int64_t>(g->phase_lcm, 2);
            g->has_sign_component = true;
        }
        g->components.push_back(std::move(c));
    }
    g->roots.resize(g->phase_lcm);
    for (int64_t r = 0; r < g->phase_lcm; ++r) {
        double th = kTwoPi * static_cast<double>(r) / static_cast<double>(g->phase_lcm);
        g->roots[r] = {std::cos(th), std::sin(th)};
    }
    return g;
}

}  // namespace

cplx DirichletCharacter::operator()(int64_t n) const {
    if (!group_) return {1.0, 0.0};  // modulus 1
    const auto& g = *group_;
    n %= g.modulus;
    if (n < 0) n += g.modulus;
    if (g.modulus > 1 && std::gcd(n, g.modulus) != 1) return {0.0, 0.0};

    int64_t r = 0;  // phase numerator mod phase_lcm
    size_t slot = 0;
    for (const auto& c : g.components) {
        int64_t nr = n % c.pe;
        if (c.p == 2 && c.e >= 3) {
            int64_t t = c.dlog[nr];
            int64_t s = c.sign_bit[nr];
            int64_t jt = indices_[slot++];
            int64_t js = indices_[slot++];
            r = (r + jt * t % c.order * (g.phase_lcm / c.order)) % g.phase_lcm;
            if ((js * s) & 1) r = (r + g.phase_lcm / 2) % g.phase_lcm;
        } else {
            int64_t t = c.dlog[nr];
            int64_t j = indices_[slot++];
            r = (r + j * t % c.order * (g.phase_lcm / c.order)) % g.phase_lcm;
        }
    }
    return g.roots[r];
}

bool DirichletCharacter::is_principal() const {
    for (auto j : indices_)
        if (j != 0) return false;
    return true;
}

int DirichletCharacter::parity() const {
    if (!group_) return 1;
    int par = 1;
    size_t slot = 0;
    for (const auto& c : group_->components) {
        if (c.p == 2 && c.e >= 3) {
            int64_t js = indices_[slot + 1];
            if (js & 1) par = -par;  // -1 has sign bit 1, t = 0
            slot += 2;
        } else if (c.p == 2 && c.e == 2) {
            if (indices_[slot] & 1) par = -par;
            ++slot;
        } else if (c.p == 2) {
            ++slot;
        } else {
            // chi(-1) = e(j * (order/2) / order) = (-1)^j
            if (indices_[slot] & 1) par = -par;
            ++slot;
        }
    }
    return par;
}

bool DirichletCharacter::is_primitive() const {
    if (!group_) return true;  // modulus 1
    size_t slot = 0;
    for (const auto& c : group_->components) {
        if (c.p == 2 && c.e >= 3) {
            int64_t jt = indices_[slot];
            slot += 2;
            if (jt % 2 == 0) return false;
        } else if (c.p == 2 && c.e == 2) {
            if (indices_[slot] == 0) return false;
            ++slot;
        } else if (c.p == 2 && c.e == 1) {
            // the only character mod 2 is induced from modulus 1
            ++slot;
            return false;
        } else {
            int64_t j = indices_[slot++];
            if (c.e == 1) {
                if (j == 0) return false;
            } else {
                if (j % c.p == 0) return false;
            }
        }
    }
    return true;
}

int64_t DirichletCharacter::conductor() const {
    if (!group_) return 1;
    int64_t cond = 1;
    size_t slot = 0;
    for (const auto& c : group_->components) {
        if (c.p == 2 && c.e >= 3) {
            int64_t jt = indices_[slot], js = indices_[slot + 1];
            slot += 2;
            if (jt == 0) {
                cond *= (js & 1) ? 4 : 1;
            } else {
                // conductor 2^(e'): 5-part index jt has 2-adic valuation v;
                // the component factors through 2^(e - v) and no further.
                int64_t v = 0, j = jt;
                while (j % 2 == 0) { j /= 2; ++v; }
                int64_t f = c.pe;
                for (int64_t i = 0; i < v; ++i) f /= 2;
                cond *= f;
            }
        } else if (c.p == 2 && c.e == 2) {
            cond *= indices_[slot] ? 4 : 1;
            ++slot;
        } else if (c.p == 2 && c.e == 1) {
            ++slot;
        } else {
            int64_t j = indices_[slot++];
            if (j == 0) { continue; }
            int64_t ord = c.order, f = c.pe;
            while (f > c.p && j % c.p == 0) { j /= c.p; f /= c.p; ord /= c.p; }
            (void)ord;
            cond *= f;
        }
    }
    return cond;
}

DirichletCharacter DirichletCharacter::conjugate() const {
    DirichletCharacter r = *this;
    size_t slot = 0;
    if (!group_) return r;
    for (const auto& c : group_->components) {
        if (c.p == 2 && c.e >= 3) {
            r.indices_[slot] = (c.order - indices_[slot]) % c.order;
            r.indices_[slot + 1] = indices_[slot + 1];  // order 2, self-inverse
            slot += 2;
        } else {
            r.indices_[slot] = (c.order - indices_[slot]) % c.order;
            ++slot;
        }
    }
    return r;
}

std::string DirichletCharacter::label() const {
    std::string s = "chi_" + std::to_string(modulus()) + "(";
    for (size_t i = 0; i < indices_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(indices_[i]);
    }
    s += ")";
    return s;
}

DirichletCharacter DirichletCharacter::principal(int64_t m) {
    auto chars = enumerate_characters(m);
    return chars.front();
}

std::vector<DirichletCharacter> enumerate_characters(int64_t m) {
    if (m <= 0) throw std::invalid_argument("enumerate_characters: m must be positive");
    std::vector<DirichletCharacter> out;
    if (m == 1) {
        out.emplace_back();
        return out;
    }
    auto g = make_group(m);

    std::vector<int64_t> orders;
    for (const auto& c : g->components) {
        if (c.p == 2 && c.e >= 3) {
            orders.push_back(c.order);
            orders.push_back(2);
        } else {
            orders.push_back(c.order);
        }
    }
    std::vector<int64_t> idx(orders.size(), 0);
    while (true) {
        DirichletCharacter chi;
        chi.group_ = g;
        chi.indices_ = idx;
        out.push_back(std::move(chi));
        size_t k = 0;
        while (k < idx.size()) {
            if (++idx[k] < orders[k]) break;
            idx[k] = 0;
            ++k;
        }
        if (k == idx.size()) break;
    }
    // principal character (all indices zero) is already first by construction
    return out;
}

// ---------------------------------------------------------------------------
// Exponential sums
// ---------------------------------------------------------------------------

double kloosterman(int64_t a, int64_t b, int64_t c) {
    if (c <= 0) throw std::invalid_argument("kloosterman: c must be positive");
    if (c == 1) return 1.0;  // single empty-modulus term e(0)
    a %= c; if (a < 0) a += c;
    b %= c; if (b < 0) b += c;
    Kahan re, im;
    for (int64_t h = 1; h < c; ++h) {
        if (std::gcd(h, c) != 1) continue;
        int64_t hbar = mod_inverse(h, c);
        int64_t num = static_cast<int64_t>(
            (static_cast<unsigned __int128>(a) * h + static_cast<unsigned __int128>(b) * hbar) % c);
        double th = kTwoPi * static_cast<double>(num) / static_cast<double>(c);
        re.add(std::cos(th));
        im.add(std::sin(th));
    }
    // the sum is real: h <-> c-h pairs terms into conjugates
    (void)im;
    return re.get();
}

std::vector<double> kloosterman_row(int64_t M) {
    if (M <= 0) throw std::invalid_argument("kloosterman_row: M must be positive");
    if (M == 1) return {1.0};
    std::vector<std::complex<double>> buf(M, {0.0, 0.0});
    for (int64_t h = 1; h < M; ++h) {
        if (std::gcd(h, M) != 1) continue;
        int64_t hbar = mod_inverse(h, M);
        double th = kTwoPi * static_cast<double>(hbar) / static_cast<double>(M);
        buf[h] = {std::cos(th), std::sin(th)};
    }
    // T[w] = sum_h buf[h] e(+wh/M): a backward DFT
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(M),
                                      reinterpret_cast<fftw_complex*>(buf.data()),
                                      reinterpret_cast<fftw_complex*>(buf.data()),
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::vector<double> row(M);
    for (int64_t w = 0; w < M; ++w) row[w] = buf[w].real();
    return row;
}

double kloosterman_from_rows(int64_t m, int64_t n, int64_t M,
                             const std::vector<std::pair<int64_t, const std::vector<double>*>>& rows) {
    double s = 0.0;
    int64_t g = std::gcd(std::gcd(m, n), M);
    for (const auto& [d, row] : rows) {
        if (g % d != 0) continue;
        int64_t Md = M / d;
        int64_t w = static_cast<int64_t>(
            (static_cast<unsigned __int128>(m / d) * static_cast<unsigned __int128>(n / d)) % Md);
        s += static_cast<double>(d) * (*row)[w];
    }
    return s;
}

cplx gauss_sum(const DirichletCharacter& chi) {
    int64_t m = chi.modulus();
    if (m == 1) return {1.0, 0.0};
    Kahan re, im;
    for (int64_t a = 1; a < m; ++a) {
        cplx v = chi(a);
        if (v == cplx{0.0, 0.0}) continue;
        double th = kTwoPi * static_cast<double>(a) / static_cast<double>(m);
        cplx e{std::cos(th), std::sin(th)};
        cplx t = v * e;
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.get(), im.get()};
}

double twisted_kloosterman_average(int64_t q, const Residue& u, int alpha,
                                   int chi2_parity, int64_t n) {
    if (!is_prime(q)) throw std::invalid_argument("twisted_kloosterman_average: q must be prime");
    if (u.modulus != q || !u.is_unit())
        throw std::invalid_argument("twisted_kloosterman_average: u must be a unit mod q");
    int beta = alpha * chi2_parity;
    int64_t nr = n % q;
    if (nr < 0) nr += q;
    if (nr == 0) return 0.0;
    int64_t v = static_cast<int64_t>((static_cast<unsigned __int128>(u.value) * nr) % q);
    double s = kloosterman(q - v, 1, q) + beta * kloosterman(v, 1, q);
    return 0.5 * static_cast<double>(q) * (static_cast<double>(q - 1) * s - (1 + beta));
}

double h_sum_bound_check(int64_t q, int64_t c, int64_t d1, int64_t a1,
                         int64_t b1, int64_t c2, int64_t n) {
    if (!is_prime(q)) throw std::invalid_argument("h_sum_bound_check: q must be prime");
    if (n % q == 0) return 0.0;
    if (d1 % q == 0 || a1 % q == 0)
        throw std::invalid_argument("h_sum_bound_check: d1, a1 must be units mod q");
    int64_t k = mod_inverse(d1 % q * (a1 % q) % q, q);
    int64_t arg0 = static_cast<int64_t>(
        (static_cast<unsigned __int128>(k) * (b1 % q) % q * (c2 % q) % q * ((n % q + q) % q)) % q);
    double worst = 0.0;
    for (int sign = 0; sign < 2; ++sign) {
        Kahan re, im;
        for (int64_t h = 1; h < q; ++h) {
            int64_t hbar = mod_inverse(h, q);
            double th = kTwoPi * static_cast<double>(hbar * (c % q) % q) / static_cast<double>(q);
            int64_t karg = hbar * arg0 % q;
            if (sign) karg = (q - karg) % q;
            double S = kloosterman(karg, 1, q);
            re.add(std::cos(th) * S);
            im.add(std::sin(th) * S);
        }
        worst = std::max(worst, std::hypot(re.get(), im.get()));
    }
    return worst / static_cast<double>(q);
}

}  // namespace sym2lab::arith
