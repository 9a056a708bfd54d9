#include "sym2lab/report.hpp"

#include <cmath>

namespace sym2lab::report {

void VerificationReport::finalize(double tol) {
    tolerance = tol;
    abs_residual = std::abs(lhs - rhs);
    rel_residual = abs_residual / std::max(std::abs(lhs), 1.0);
    pass = rel_residual < tol && first_failure.empty();
    sanitize(*this);
}

void sanitize(VerificationReport& r) {
    auto bad = [](double x) { return std::isnan(x); };
    if (bad(r.lhs.real()) || bad(r.lhs.imag()) || bad(r.rhs.real()) || bad(r.rhs.imag()) ||
        bad(r.abs_residual) || bad(r.rel_residual)) {
        if (r.first_failure.empty()) r.first_failure = "NaN encountered";
        r.pass = false;
        auto fix = [](double& x) { if (std::isnan(x)) x = 0.0; };
        double lr = r.lhs.real(), li = r.lhs.imag(), rr = r.rhs.real(), ri = r.rhs.imag();
        fix(lr); fix(li); fix(rr); fix(ri);
        r.lhs = {lr, li};
        r.rhs = {rr, ri};
        fix(r.abs_residual);
        fix(r.rel_residual);
    }
}

nlohmann::ordered_json VerificationReport::to_json(bool canonical) const {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    j["anchor"] = anchor;
    j["inputs"] = inputs;
    j["lhs"] = {{"re", lhs.real()}, {"im", lhs.imag()}};
    j["rhs"] = {{"re", rhs.real()}, {"im", rhs.imag()}};
    j["abs_residual"] = abs_residual;
    j["rel_residual"] = rel_residual;
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    j["first_failure"] = first_failure;
    j["truncation"] = truncation;
    if (!canonical) j["wall_ms"] = wall_ms;
    return j;
}

std::string VerificationReport::to_string() const {
    return (pass ? std::string("PASS ") : std::string("FAIL ")) + identity +
           " rel_residual=" + std::to_string(rel_residual) +
           (first_failure.empty() ? "" : " (" + first_failure + ")");
}

}  // namespace sym2lab::report
