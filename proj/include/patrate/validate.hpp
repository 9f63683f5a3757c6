// Model validation: gathers the hypotheses the spectral and rate-function
// results rest on. Diagnostics, not exceptions; callers decide whether to
// refuse the model.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "model.hpp"
#include "spectral.hpp"

namespace patrate {

struct ValidationReport {
    bool primitive = false;         // A+B primitive
    bool support_ok = false;        // positive total weight at every length up to the Wielandt exponent
    bool lambda_a_positive = false; // spectral radius of A above tolerance
    bool lambda_b_positive = false; // spectral radius of B above tolerance
    std::vector<std::string> messages;

    // Downstream spectral operations refuse the model unless this holds.
    bool accepted() const { return primitive && support_ok; }
};

inline ValidationReport validate(const LinearRepresentation& rep,
                                 double radius_tol = default_radius_tol) {
    ValidationReport report;
    const Matrix sum = rep.matrix_a + rep.matrix_b;

    report.primitive = is_primitive(sum);
    if (!report.primitive)
        report.messages.push_back("A+B is not primitive; spectral operations refuse this model");

    // xi' (A+B)^n eta > 0 for n = 1 .. (m-1)^2 + 1, checked in exact boolean
    // arithmetic on the support; beyond the Wielandt exponent primitivity
    // plus xi, eta != 0 forces positivity.
    report.support_ok = true;
    const std::size_t m = rep.dimension;
    std::vector<char> support(m);
    for (std::size_t i = 0; i < m; ++i) support[i] = rep.xi[i] > 0.0;
    for (std::size_t n = 1; n <= wielandt_exponent(m); ++n) {
        std::vector<char> next(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (!support[i]) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (sum(i, j) != 0.0) next[j] = 1;
        }
        support = std::move(next);
        bool positive = false;
        for (std::size_t j = 0; j < m; ++j)
            if (support[j] && rep.eta[j] > 0.0) positive = true;
        if (!positive) {
            report.support_ok = false;
            report.messages.push_back("support condition fails: no positive-weight word of length " +
                                      std::to_string(n));
            break;
        }
    }

    report.lambda_a_positive = spectral_radius(rep.matrix_a) > radius_tol;
    report.lambda_b_positive = spectral_radius(rep.matrix_b) > radius_tol;
    if (!report.lambda_a_positive)
        report.messages.push_back(
            "spectral radius of A is numerically zero; the drift limit V will be estimated");
    if (!report.lambda_b_positive)
        report.messages.push_back(
            "spectral radius of B is numerically zero; the drift limit U will be estimated");
    return report;
}

} // namespace patrate
