#include "sym2lab/kernels.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace sym2lab::kernels {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLog2 = 0.69314718055994530941723212145818;
constexpr double kLogPi = 1.1447298858494001741434273513531;
}  // namespace

cplx parity_root(int alpha) {
    // i^((1-alpha)/2)
    return alpha == 1 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
}

cplx SymSqFE::log_H(cplx s) const {
    double abar = 0.5 * (1 + alpha);  // 1 for even twists, 0 for odd
    cplx lg = log_gamma(0.5 * (s + abar)) + log_gamma(s + static_cast<double>(k - 1));
    return lg + s * (kLog2 - 3.5 * kLogPi + std::log(static_cast<double>(b2)));
}

cplx SymSqFE::h_ratio(cplx s) const {
    double abar = 0.5 * (1 + alpha);
    cplx num1 = 0.5 * (1.0 - s + abar), num2 = static_cast<double>(k) - s;
    cplx den1 = 0.5 * (s + abar), den2 = s + static_cast<double>(k - 1);
    bool den_pole = is_gamma_pole(den1) || is_gamma_pole(den2);
    bool num_pole = is_gamma_pole(num1) || is_gamma_pole(num2);
    if (num_pole && !den_pole)
        throw std::domain_error("h_ratio: numerator gamma pole");
    if (den_pole) return {0.0, 0.0};
    cplx lg = log_gamma(num1) + log_gamma(num2) - log_gamma(den1) - log_gamma(den2);
    lg += (1.0 - 2.0 * s) * (kLog2 - 3.5 * kLogPi + std::log(static_cast<double>(b2)));
    return std::exp(lg);
}

// ---------------------------------------------------------------------------
// ContourKernel
// ---------------------------------------------------------------------------

// Mellin transform of the weight along a fixed vertical line, as a Fourier
// sum over a log-spaced grid:
//   mell(sig + it) = int w(e^u) e^(u sig) e^(iut) du ~ delta sum_m g_m e^(i u_m t).
// The rotation advances incrementally with periodic exact re-anchoring,
// which keeps phase drift below ~1e-14 across the grid.
cplx ContourKernel::MellGrid::eval(double t) const {
    if (!active) return {1.0, 0.0};
    cplx acc = 0.0;
    const cplx step = std::polar(1.0, delta * t);
    size_t m = 0;
    while (m < g.size()) {
        size_t end = std::min(g.size(), m + 64);
        cplx rot = std::polar(1.0, (u0 + delta * static_cast<double>(m)) * t);
        for (; m < end; ++m) {
            acc += g[m] * rot;
            rot *= step;
        }
    }
    return acc * delta;
}

void ContourKernel::set_weight_grid(Line& line, const std::function<double(double)>& w,
                                    double lo, double hi) const {
    const size_t M = 16384;
    line.grid.active = true;
    line.grid.delta = std::log(hi / lo) / static_cast<double>(M);
    line.grid.u0 = std::log(lo) + 0.5 * line.grid.delta;  // midpoint rule
    line.grid.g.resize(M);
    line.grid.crude = 0.0;
    for (size_t m = 0; m < M; ++m) {
        double u = line.grid.u0 + line.grid.delta * static_cast<double>(m);
        double v = w(std::exp(u)) * std::exp(u * line.abscissa);
        line.grid.g[m] = v;
        line.grid.crude += std::abs(v);
    }
    line.grid.crude *= line.grid.delta;
}

void ContourKernel::build_line(Line& line, double h) const {
    line.h = h;
    line.w.clear();
    double wmax = 0.0;
    int below = 0, mell_noise = 0;
    const double mell_floor = 2e-15 * (line.grid.active ? line.grid.crude : 0.0);
    for (size_t j = 0;; ++j) {
        double t = h * static_cast<double>(j);
        if (t > 4000.0) break;
        cplx s(line.abscissa, t);
        cplx mell = line.grid.eval(t);
        cplx v = ratio_(s) * mell;
        line.w.push_back(v);
        double a = std::abs(v);
        wmax = std::max(wmax, a);
        below = (a < 1e-13 * (wmax + 1e-300)) ? below + 1 : 0;
        mell_noise = (line.grid.active && std::abs(mell) < mell_floor) ? mell_noise + 1 : 0;
        if (t > 20.0 && (below >= 48 || mell_noise >= 8)) break;
    }
    while (line.w.size() > 8 && std::abs(line.w.back()) < 1e-13 * (wmax + 1e-300))
        line.w.pop_back();
    double s = 0.0;
    for (size_t j = 0; j < line.w.size(); ++j)
        s += (j == 0 ? 1.0 : 2.0) * std::abs(line.w[j]);
    line.line_const = s * h / (2.0 * kPi);
}

double ContourKernel::eval_on(const Line& line, double x) const {
    const double L = expo_sign_ * std::log(x);
    const cplx step(std::cos(line.h * L), std::sin(line.h * L));
    double acc = line.w[0].real() * 0.5;
    size_t j = 1;
    while (j < line.w.size()) {
        size_t end = std::min(line.w.size(), j + 64);
        cplx phase = std::polar(1.0, line.h * L * static_cast<double>(j));
        for (; j < end; ++j) {
            acc += line.w[j].real() * phase.real() - line.w[j].imag() * phase.imag();
            phase *= step;
        }
    }
    double amp = std::exp(line.abscissa * expo_sign_ * std::log(x));
    return amp * acc * line.h / kPi;
}

const ContourKernel::Line& ContourKernel::pick(double x) const {
    if (lines_.size() > 1 && x < switch_x_) return lines_.front();
    return lines_.back();
}

double ContourKernel::operator()(double x) const {
    if (x <= 0.0) throw std::invalid_argument("ContourKernel: x must be positive");
    return eval_on(pick(x), x);
}

size_t ContourKernel::nodes() const {
    size_t n = 0;
    for (const auto& l : lines_) n += l.w.size();
    return n;
}

double ContourKernel::refinement_check(const std::vector<double>& xs) const {
    ContourKernel finer = *this;
    for (auto& l : finer.lines_) finer.build_line(l, 0.5 * l.h);
    double worst = 0.0;
    for (double x : xs) {
        double a = (*this)(x), b = finer(x);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    return worst;
}

void ContourKernel::refine_until(double target_err, double h0, int max_halvings) {
    std::vector<double> probes = {0.01, 0.08, 0.2, 0.7, 1.9, 4.3, 11.0, 50.0};
    for (auto& l : lines_) build_line(l, h0);
    for (int attempt = 0; attempt < max_halvings; ++attempt) {
        ContourKernel finer = *this;
        for (auto& l : finer.lines_) finer.build_line(l, 0.5 * l.h);
        double worst = 0.0;
        for (double x : probes) {
            double a = (*this)(x), b = finer(x);
            worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
        finer.refine_err_ = worst;
        *this = std::move(finer);
        if (worst < target_err) return;
    }
}

ContourKernel ContourKernel::make_V(int k, double sigma, double target_err) {
    if (sigma <= 0.0) throw std::invalid_argument("make_V: sigma must be positive");
    ContourKernel ker;
    ker.expo_sign_ = -1.0;
    ker.switch_x_ = 0.0;
    double logG_half = (log_gamma(cplx(2.0 * k - 1.0, 0.0)) + log_gamma(cplx(k, 0.0))).real();
    ker.ratio_ = [k, logG_half](cplx s) -> cplx {
        // G(1/2+s)/G(1/2) / s, G(s) = pi^(-3s) Gamma(s+2k-3/2) Gamma(s+k-1/2) Gamma(s+1/2)
        cplx lg = log_gamma(s + (2.0 * k - 1.0)) + log_gamma(s + static_cast<double>(k)) +
                  log_gamma(s + 1.0) - logG_half - 3.0 * kLogPi * s;
        return std::exp(lg) / s;
    };
    Line left;
    left.abscissa = sigma;
    ker.lines_.push_back(std::move(left));
    ker.refine_until(target_err, 0.2, 4);
    return ker;
}

ContourKernel ContourKernel::make_dual(std::function<double(double)> w, double lo, double hi,
                                       int k, int alpha, int64_t b2,
                                       double sigma, double target_err) {
    if (sigma <= 0.0) throw std::invalid_argument("make_dual: sigma must be positive");
    ContourKernel ker;
    ker.expo_sign_ = +1.0;
    ker.switch_x_ = 1.0;
    SymSqFE fe{k, alpha, b2};
    ker.ratio_ = [fe](cplx s) -> cplx { return fe.h_ratio(s); };
    Line right, left;
    right.abscissa = 0.6;
    left.abscissa = -sigma;
    ker.set_weight_grid(right, w, lo, hi);
    ker.set_weight_grid(left, w, lo, hi);
    ker.lines_.push_back(std::move(right));
    ker.lines_.push_back(std::move(left));
    ker.refine_until(target_err, 0.25, 3);
    return ker;
}

ContourKernel ContourKernel::make_dual(const SmoothBump& bump, int k, int alpha,
                                       double sigma, double target_err) {
    // bump-shaped kernels recur across verification instances; cache them
    static std::mutex mu;
    static std::map<std::tuple<int, int, int64_t, int64_t, int64_t, int64_t>, ContourKernel> cache;
    auto key = std::make_tuple(k, alpha,
                               static_cast<int64_t>(std::lround(bump.a * 4096)),
                               static_cast<int64_t>(std::lround(bump.shape * 4096)),
                               static_cast<int64_t>(std::lround(sigma * 4096)),
                               static_cast<int64_t>(std::lround(-std::log10(target_err))));
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    SmoothBump b = bump;
    ContourKernel ker = make_dual([b](double x) { return b(x); },
                                  b.support_lo(), b.support_hi(),
                                  k, alpha, 1, sigma, target_err);
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(key, ker);
    return ker;
}

double kernel_V_value(double x, int k, double sigma) {
    static std::mutex mu;
    static std::map<std::pair<int, int64_t>, ContourKernel> cache;
    std::pair<int, int64_t> key{k, static_cast<int64_t>(std::lround(sigma * 4096))};
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, ContourKernel::make_V(k, sigma)).first;
    return it->second(x);
}

}  // namespace sym2lab::kernels
