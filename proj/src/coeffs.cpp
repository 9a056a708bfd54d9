#include "sym2lab/coeffs.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sym2lab/arith.hpp"

namespace sym2lab::coeffs {

double sym2_coeff(const qexp::NewformData& f, int64_t n) {
    if (n < 1 || n > f.trunc) throw std::out_of_range("sym2_coeff: n out of table range");
    double s = 0.0;
    for (int64_t d1 = 1; d1 * d1 <= n; ++d1) {
        if (n % (d1 * d1) != 0) continue;
        int64_t rest = n / (d1 * d1);
        for (int64_t d2 = 1; d2 <= rest; ++d2) {
            if (rest % d2 != 0) continue;
            // lambda(d2^2) via the prime-power recurrence (d2^2 may exceed trunc)
            double v = 1.0;
            for (auto& [p, e] : arith::factorize(d2)) v *= f.lambda_prime_power(p, 2 * e);
            s += v;
        }
    }
    return s;
}

Sym2CoeffTable::Sym2CoeffTable(std::shared_ptr<const qexp::NewformData> f, int64_t limit)
    : f_(std::move(f)) {
    rebuild(limit);
}

void Sym2CoeffTable::ensure(int64_t limit) {
    if (limit <= this->limit()) return;
    rebuild(limit);
}

void Sym2CoeffTable::rebuild(int64_t limit) {
    // smallest-prime-factor sieve, then multiplicative fill from prime powers
    std::vector<int32_t> spf(limit + 1, 0);
    for (int64_t i = 2; i <= limit; ++i) {
        if (spf[i] == 0)
            for (int64_t j = i; j <= limit; j += i)
                if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
    }
    a1_.assign(limit + 1, 0.0);
    a1_[1] = 1.0;
    for (int64_t n = 2; n <= limit; ++n) {
        int64_t p = spf[n], pe = p, m = n / p;
        int e = 1;
        while (m % p == 0) { m /= p; pe *= p; ++e; }
        double app;
        if (m == 1 || a1_[pe] == 0.0) {
            // A(p^e,1) = sum over (i, j) with 2i + j <= e of lambda(p^(2j))
            app = 0.0;
            for (int i = 0; 2 * i <= e; ++i)
                for (int j = 0; 2 * i + j <= e; ++j)
                    app += f_->lambda_prime_power(p, 2 * j);
            if (m == 1) { a1_[n] = app; continue; }
        } else {
            app = a1_[pe];
        }
        a1_[n] = app * a1_[m];
    }
}

double Sym2CoeffTable::A1(int64_t n) const {
    if (n < 1 || n > limit()) throw std::out_of_range("Sym2CoeffTable::A1: out of range");
    if (flagged(n))
        throw std::domain_error("Sym2CoeffTable::A1: entry at multiple of the level is flagged");
    return a1_[n];
}

double Sym2CoeffTable::A1_unchecked(int64_t n) const { return a1_[n]; }

double Sym2CoeffTable::rankin(int64_t n, int64_t m) const {
    int64_t q = f_->level;
    if (n % q == 0 || m % q == 0)
        throw std::domain_error("rankin: arguments must be coprime to the level");
    double s = 0.0;
    int64_t g = std::gcd(n, m);
    for (int64_t d = 1; d <= g; ++d) {
        if (g % d != 0) continue;
        // mu(d)
        int mu = 1;
        int64_t dd = d;
        for (int64_t p = 2; p * p <= dd; ++p) {
            if (dd % p == 0) {
                dd /= p;
                if (dd % p == 0) { mu = 0; break; }
                mu = -mu;
            }
        }
        if (mu == 0) continue;
        if (dd > 1) mu = -mu;
        s += mu * a1_[n / d] * a1_[m / d];
    }
    return s;
}

DirichletPartial sym2_dirichlet_partial(const Sym2CoeffTable& t, cplx s, int64_t X) {
    const int64_t q = t.form().level;
    DirichletPartial out;
    out.warned_region = (s.real() <= 1.0);
    X = std::min<int64_t>(X, t.limit());
    cplx sum = 0.0;
    for (int64_t n = 1; n <= X; ++n) {
        if (n % q == 0) continue;
        sum += t.A1_unchecked(n) * std::exp(-s * std::log(static_cast<double>(n)));
    }
    cplx euler_q = 1.0 / (1.0 - std::exp(-(s + 1.0) * std::log(static_cast<double>(q))));
    out.value = euler_q * sum;

    // tail: sum_{n>X} d3(n) n^(-sigma) <= X^(sigma'-sigma) zeta(sigma')^3, 1 < sigma' < sigma
    double sig = s.real();
    if (sig <= 1.0) {
        out.tail_bound = std::numeric_limits<double>::infinity();
    } else {
        double best = std::numeric_limits<double>::infinity();
        double lo = 1.0 + 1.0 / std::log(static_cast<double>(X) + 2.0);
        for (double sp = lo; sp < sig; sp += (sig - lo) / 16.0 + 1e-9) {
            double z = std::riemann_zeta(sp);
            double b = std::pow(static_cast<double>(X), sp - sig) * z * z * z;
            best = std::min(best, b);
            if (sp > sig - 1e-9) break;
        }
        out.tail_bound = best * std::abs(euler_q);
    }
    return out;
}

double sym2_L1_smoothed(const Sym2CoeffTable& t, int64_t X) {
    const int64_t q = t.form().level;
    int64_t lim = std::min<int64_t>(t.limit(), 12 * X);
    double sum = 0.0;
    for (int64_t n = lim; n >= 1; --n) {
        if (n % q == 0) continue;
        sum += t.A1_unchecked(n) * std::exp(-static_cast<double>(n) / X) / n;
    }
    double euler_q = 1.0 / (1.0 - 1.0 / (static_cast<double>(q) * q));
    return euler_q * sum;
}

double sym2_L1_smoothed(int64_t level, const std::vector<double>& A1, int64_t X) {
    int64_t lim = std::min<int64_t>(static_cast<int64_t>(A1.size()) - 1, 12 * X);
    double sum = 0.0;
    for (int64_t n = lim; n >= 1; --n) {
        if (n % level == 0) continue;
        sum += A1[n] * std::exp(-static_cast<double>(n) / X) / n;
    }
    double euler_q = 1.0 / (1.0 - 1.0 / (static_cast<double>(level) * level));
    return euler_q * sum;
}

double local_factor_identity(const qexp::NewformData& f, int64_t p,
                             cplx chi_p, cplx chi_p2, cplx chi_p3, int D) {
    if (p == f.level) throw std::invalid_argument("local_factor_identity: p must differ from the level");
    if (D < 3) throw std::invalid_argument("local_factor_identity: D >= 3");
    // series coefficients s_j = A(p^j,1) chi(p)^j
    std::vector<cplx> series(D + 1);
    cplx chij = 1.0;
    for (int j = 0; j <= D; ++j) {
        double apj = 0.0;
        for (int i = 0; 2 * i <= j; ++i)
            for (int jj = 0; 2 * i + jj <= j; ++jj)
                apj += f.lambda_prime_power(p, 2 * jj);
        series[j] = apj * chij;
        chij *= chi_p;
    }
    double ap = 1.0 + f.lambda_prime_power(p, 2);  // A(p,1)
    cplx quartic[4] = {1.0, -ap * chi_p, ap * chi_p2, -chi_p3};
    double worst = 0.0;
    for (int j = 0; j <= D - 3; ++j) {
        cplx conv = 0.0;
        for (int t = 0; t < 4 && t <= j; ++t) conv += quartic[t] * series[j - t];
        cplx want = (j == 0) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
        worst = std::max(worst, std::abs(conv - want));
    }
    return worst;
}

}  // namespace sym2lab::coeffs
