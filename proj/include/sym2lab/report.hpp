#pragma once

#include <complex>
#include <string>

#include <json.hpp>

namespace sym2lab::report {

// Structured record of one identity check.  `anchor` is the stable
// machine-readable name of the identity; `wall_ms` is excluded from the
// canonical serialization so repeated runs are byte-identical.
struct VerificationReport {
    std::string identity;
    std::string anchor;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    std::complex<double> lhs{0.0, 0.0};
    std::complex<double> rhs{0.0, 0.0};
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string first_failure;  // empty when pass
    nlohmann::ordered_json truncation = nlohmann::ordered_json::object();
    double wall_ms = 0.0;

    // Sets residuals from lhs/rhs and evaluates pass against tolerance.
    void finalize(double tol);

    nlohmann::ordered_json to_json(bool canonical = true) const;
    std::string to_string() const;
};

// Reports must never carry NaN; this replaces NaN by a failure marker and
// flips pass to false.
void sanitize(VerificationReport& r);

}  // namespace sym2lab::report
