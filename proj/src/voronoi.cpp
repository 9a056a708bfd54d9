#include "sym2lab/voronoi.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sym2lab::voronoi {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<cplx> unit_roots(int64_t q) {
    std::vector<cplx> e(q);
    for (int64_t r = 0; r < q; ++r) {
        double th = kTwoPi * static_cast<double>(r) / static_cast<double>(q);
        e[r] = {std::cos(th), std::sin(th)};
    }
    return e;
}

// zeta(2)^3, for the divisor-majorant tail sum_{n>T} d3(n) n^-5 <= zeta(2)^3 T^-3
constexpr double kZeta2Cubed = 4.45112;
}  // namespace

cplx voronoi_lhs(const VoronoiInstance& inst) {
    int64_t hi = static_cast<int64_t>(std::floor(inst.phi.support_hi())) + 1;
    coeffs::Sym2CoeffTable table(inst.f, hi + 1);
    return voronoi_lhs(inst, table);
}

cplx voronoi_lhs(const VoronoiInstance& inst, coeffs::Sym2CoeffTable& table) {
    const int64_t q = inst.f->level;
    if (std::gcd(inst.h, q) != 1) throw std::invalid_argument("voronoi_lhs: gcd(h,q) != 1");
    int64_t lo = static_cast<int64_t>(std::ceil(inst.phi.support_lo()));
    int64_t hi = static_cast<int64_t>(std::floor(inst.phi.support_hi()));
    table.ensure(hi + 1);
    auto e = unit_roots(q);
    cplx sum = 0.0;
    for (int64_t n = lo; n <= hi; ++n) {
        if (n % q == 0) continue;
        double w = inst.phi(static_cast<double>(n));
        if (w == 0.0) continue;
        sum += table.A1(n) * w * e[(n % q) * (inst.h % q) % q];
    }
    return sum;
}

DualSide voronoi_rhs(const VoronoiInstance& inst, coeffs::Sym2CoeffTable& table) {
    const int64_t q = inst.f->level;
    const int k = inst.f->weight;
    if (std::gcd(inst.h, q) != 1) throw std::invalid_argument("voronoi_rhs: gcd(h,q) != 1");
    const int64_t hbar = arith::mod_inverse(inst.h, q);
    const double q3 = static_cast<double>(q) * q * q;

    // kernels for both parities on phi's own support
    auto phi_fun = inst.phi;
    auto ker_plus = kernels::ContourKernel::make_dual(phi_fun, k, +1, inst.sigma, 1e-8);
    auto ker_minus = kernels::ContourKernel::make_dual(phi_fun, k, -1, inst.sigma, 1e-8);

    // S(w, 1; q) for all residues w
    std::vector<double> S(q);
    for (int64_t w = 0; w < q; ++w) S[w] = arith::kloosterman(w, 1, q);

    const cplx root_minus = kernels::parity_root(-1);  // i

    // direct part of the correction term
    cplx corr = 0.0;
    {
        int64_t lo = static_cast<int64_t>(std::ceil(inst.phi.support_lo()));
        int64_t hi = static_cast<int64_t>(std::floor(inst.phi.support_hi()));
        table.ensure(hi + 1);
        double s = 0.0;
        for (int64_t n = lo; n <= hi; ++n) {
            if (n % q == 0) continue;
            double w = inst.phi(static_cast<double>(n));
            if (w != 0.0) s += table.A1(n) * w;
        }
        corr += s / static_cast<double>(q - 1);
    }

    // adaptive dual sums
    double dual_plus = 0.0;   // both real: kernels and Kloosterman combos are real
    double dual_minus = 0.0;
    double corr_kernel = 0.0;
    const double tol_abs = inst.tolerance / 10.0;

    double c_emp = 0.0;  // max |Phi(x)| x^4 over evaluated frontier
    int64_t T = 0;
    int64_t block = std::max<int64_t>(64, static_cast<int64_t>(q3 / inst.phi.a / 8));
    double tail_model = std::numeric_limits<double>::infinity();
    int calm_blocks = 0;

    while (true) {
        int64_t T1 = T + block;
        if (T1 > inst.t_dual_cap)
            throw std::runtime_error(
                "voronoi_rhs: dual truncation cap reached; required T_dual > " +
                std::to_string(inst.t_dual_cap));
        if (T1 > inst.f->trunc)
            throw std::runtime_error(
                "voronoi_rhs: newform table too short; rebuild with trunc >= " +
                std::to_string(2 * T1));
        table.ensure(T1);
        double block_mass = 0.0;
        for (int64_t n = T + 1; n <= T1; ++n) {
            if (n % q == 0) continue;
            double x = static_cast<double>(n) / q3;
            double kp = ker_plus(x);
            double km = ker_minus(x);
            double A_over_n = table.A1(n) / static_cast<double>(n);
            int64_t v = (n % q) * hbar % q;
            double combo_p = S[(q - v) % q] + S[v];
            double combo_m = S[(q - v) % q] - S[v];
            dual_plus += A_over_n * combo_p * kp;
            dual_minus += A_over_n * combo_m * km;
            corr_kernel += A_over_n * kp;
            block_mass += std::abs(A_over_n) * (std::abs(combo_p * kp) + std::abs(combo_m * km));
            double x4 = x * x * x * x;
            c_emp = std::max({c_emp, std::abs(kp) * x4, std::abs(km) * x4});
        }
        T = T1;
        // decay-model tail: |Phi(x)| <= c_emp x^-4 beyond the frontier
        double weil = 2.0 * std::sqrt(static_cast<double>(q));
        double sum_d3 = kZeta2Cubed / (static_cast<double>(T) * T * T);
        double coef = (static_cast<double>(q) / 2.0) * (2.0 * weil) +
                      static_cast<double>(q) / (q - 1);
        tail_model = coef * c_emp * q3 * q3 * q3 * q3 * sum_d3;
        calm_blocks = (block_mass * (q / 2.0 + 1.0) < tol_abs / 4.0) ? calm_blocks + 1 : 0;
        if (tail_model < tol_abs && calm_blocks >= 2) break;
        if (static_cast<double>(T) > 4.0 * q3 / inst.phi.a && calm_blocks >= 6) break;
        block = block + block / 2;
    }

    DualSide out;
    cplx main_part = (static_cast<double>(q) / 2.0) *
                     (cplx(dual_plus, 0.0) + root_minus * dual_minus);
    cplx corr_full = corr + cplx(static_cast<double>(q) / (q - 1) * corr_kernel, 0.0);
    out.value = main_part - corr_full;
    out.trivial_correction = corr_full;
    out.t_dual = T;
    out.tail_estimate = tail_model;
    // rigorous but loose line-norm bound at sigma = 4
    {
        auto k4p = kernels::ContourKernel::make_dual(phi_fun, k, +1, 4.0, 1e-6);
        auto k4m = kernels::ContourKernel::make_dual(phi_fun, k, -1, 4.0, 1e-6);
        double c4 = std::max(k4p.line_constant(), k4m.line_constant());
        double weil = 2.0 * std::sqrt(static_cast<double>(q));
        double coef = (static_cast<double>(q) / 2.0) * (2.0 * weil) +
                      static_cast<double>(q) / (q - 1);
        out.tail_line_norm = coef * c4 * q3 * q3 * q3 * q3 * kZeta2Cubed /
                             (static_cast<double>(T) * T * T);
    }
    out.kernel_refine_err = std::max(ker_plus.refinement_error(), ker_minus.refinement_error());
    return out;
}

report::VerificationReport verify_voronoi(const VoronoiInstance& inst) {
    report::VerificationReport rep;
    rep.identity = "voronoi.prime_level_sym2";
    rep.anchor = "gl3-voronoi/additive-twist";
    rep.inputs["q"] = inst.f->level;
    rep.inputs["k"] = inst.f->weight;
    rep.inputs["h"] = inst.h;
    rep.inputs["N"] = inst.phi.a;
    rep.inputs["bump_shape"] = inst.phi.shape;

    int64_t need = static_cast<int64_t>(inst.phi.support_hi()) + 2;
    coeffs::Sym2CoeffTable table(inst.f, need);
    try {
        rep.lhs = voronoi_lhs(inst, table);
        DualSide rhs = voronoi_rhs(inst, table);
        rep.rhs = rhs.value;
        rep.truncation["t_dual"] = rhs.t_dual;
        rep.truncation["tail_estimate"] = rhs.tail_estimate;
        rep.truncation["tail_line_norm_sigma4"] = rhs.tail_line_norm;
        rep.truncation["kernel_refinement_error"] = rhs.kernel_refine_err;
        // localization aid: residual with the trivial-character correction toggled off
        cplx no_corr = rhs.value + rhs.trivial_correction;
        rep.truncation["rel_residual_without_correction"] =
            std::abs(rep.lhs - no_corr) / std::max(std::abs(rep.lhs), 1.0);
    } catch (const std::exception& e) {
        rep.first_failure = e.what();
    }
    rep.finalize(inst.tolerance);
    return rep;
}

report::VerificationReport verify_twisted_fe(std::shared_ptr<const qexp::NewformData> f,
                                             const arith::DirichletCharacter& chi,
                                             double N, double tolerance, double shape) {
    report::VerificationReport rep;
    rep.identity = "twisted_fe.sym2_primitive";
    rep.anchor = "sym2-functional-equation/conductor-q";
    const int64_t q = f->level;
    rep.inputs["q"] = q;
    rep.inputs["k"] = f->weight;
    rep.inputs["chi"] = chi.label();
    rep.inputs["N"] = N;

    if (chi.modulus() != q || !chi.is_primitive()) {
        rep.first_failure = "character must be primitive mod q";
        rep.finalize(tolerance);
        return rep;
    }
    const int alpha = chi.parity();
    rep.inputs["alpha"] = alpha;

    kernels::SmoothBump W(1.0, shape);
    auto chib = chi.conjugate();

    coeffs::Sym2CoeffTable table(f, static_cast<int64_t>(2.0 * N) + 2);

    // direct side
    cplx direct = 0.0;
    {
        int64_t lo = static_cast<int64_t>(std::ceil(N));
        int64_t hi = static_cast<int64_t>(std::floor(2.0 * N));
        for (int64_t n = lo; n <= hi; ++n) {
            if (n % q == 0) continue;
            double w = W(static_cast<double>(n) / N);
            if (w == 0.0) continue;
            direct += table.A1(n) * w * chib(n);
        }
    }

    // dual side
    auto ker = kernels::ContourKernel::make_dual(W, f->weight, alpha, 0.75, 1e-8);
    cplx tau3 = arith::gauss_sum(chib);
    tau3 = tau3 * tau3 * tau3;
    const double scale = N / (static_cast<double>(q) * q * q);
    const double tol_abs = tolerance / 10.0;

    try {
        cplx dual = 0.0;
        double c_emp = 0.0;
        int64_t T = 0, block = std::max<int64_t>(64, q * 4);
        double tail_model = std::numeric_limits<double>::infinity();
        int calm = 0;
        while (true) {
            int64_t T1 = T + block;
            if (T1 > 4000000) throw std::runtime_error("verify_twisted_fe: truncation cap reached");
            if (T1 > f->trunc)
                throw std::runtime_error(
                    "verify_twisted_fe: newform table too short; rebuild with trunc >= " +
                    std::to_string(2 * T1));
            table.ensure(T1);
            double mass = 0.0;
            for (int64_t n = T + 1; n <= T1; ++n) {
                if (n % q == 0) continue;
                double x = static_cast<double>(n) * scale;
                double kv = ker(x);
                cplx term = table.A1(n) / static_cast<double>(n) * chi(n) * kv;
                dual += term;
                mass += std::abs(term);
                c_emp = std::max(c_emp, std::abs(kv) * x * x * x * x);
            }
            T = T1;
            double sum_d3 = kZeta2Cubed / (static_cast<double>(T) * T * T);
            tail_model = c_emp / (scale * scale * scale * scale) * sum_d3;
            calm = (mass * std::abs(tau3) < tol_abs / 4.0) ? calm + 1 : 0;
            if (tail_model * std::abs(tau3) < tol_abs && calm >= 2) break;
            block = block + block / 2;
        }
        cplx dual_full = kernels::parity_root(alpha) * tau3 * dual;

        rep.lhs = direct;
        rep.rhs = dual_full;
        rep.truncation["t_dual"] = T;
        rep.truncation["tail_estimate"] = tail_model * std::abs(tau3);
        rep.truncation["kernel_refinement_error"] = ker.refinement_error();
    } catch (const std::exception& e) {
        rep.lhs = direct;
        rep.first_failure = e.what();
    }
    rep.finalize(tolerance);
    return rep;
}

}  // namespace sym2lab::voronoi
