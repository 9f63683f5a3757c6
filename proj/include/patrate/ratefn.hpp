// The large-deviation rate function I(x) = x tau_x + log lambda - log y(tau_x)
// where tau_x solves beta(tau) = x. I is convex on the attainable drift
// interval, vanishes exactly at x = beta(0), and has I'(x) = tau_x.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "spectral.hpp"

namespace patrate {

inline constexpr double default_beta_residual_tol = 1e-12;

struct RateDomain {
    double u_limit = 0.0;
    double v_limit = 1.0;
    bool open01 = false;
    double lambda_a = 0.0;
    double lambda_b = 0.0;
    // lim_{x -> U+} I(x) and lim_{x -> V-} I(x). Exact log(lambda/lambda_B)
    // resp. log(lambda/lambda_A) whenever that side's radius is positive,
    // otherwise estimated at the t = -/+ saturation bound.
    double endpoint_left = 0.0;
    double endpoint_right = 0.0;
};

struct RatePoint {
    double x = 0.0;
    double tau = 0.0;        // tilt solving beta(tau) = x
    double rate = 0.0;       // I(x) >= 0
    double derivative = 0.0; // I'(x) = tau, by construction
};

// Solves beta(tau) = x to |beta(tau) - x| <= beta_tol. Brackets by doubling
// outward from [-1, 1]; if the saturation bound is reached without bracketing
// x, the request is out of the attainable drift interval. Inside the bracket:
// Newton steps with derivative gamma(tau), falling back to bisection whenever
// the step leaves the bracket. Deterministic.
inline double solve_tau(const LinearRepresentation& rep, double x,
                        double beta_tol = default_beta_residual_tol,
                        double bracket_bound = default_saturation_t) {
    if (!std::isfinite(x))
        throw DomainError("drift target x must be finite");

    double lo = -1.0, hi = 1.0;
    double beta_lo = drift(rep, lo);
    double beta_hi = drift(rep, hi);
    while (beta_lo > x) {
        if (lo <= -bracket_bound)
            throw DomainError("x = " + std::to_string(x) +
                              " is below the attainable drift interval (beta(" +
                              std::to_string(-bracket_bound) + ") = " + std::to_string(beta_lo) +
                              ")");
        lo = std::max(2.0 * lo, -bracket_bound);
        beta_lo = drift(rep, lo);
    }
    while (beta_hi < x) {
        if (hi >= bracket_bound)
            throw DomainError("x = " + std::to_string(x) +
                              " is above the attainable drift interval (beta(" +
                              std::to_string(bracket_bound) + ") = " + std::to_string(beta_hi) +
                              ")");
        hi = std::min(2.0 * hi, bracket_bound);
        beta_hi = drift(rep, hi);
    }

    double t = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const auto cp = curve_point(rep, t);
        const double residual = cp.beta - x;
        if (std::abs(residual) <= beta_tol)
            return t;
        if (residual < 0.0)
            lo = t;
        else
            hi = t;
        const double newton = t - residual / cp.gamma;
        t = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
    }
    throw ConvergenceError("solve_tau: no convergence to |beta(tau) - x| <= " +
                           std::to_string(beta_tol) + " at x = " + std::to_string(x));
}

inline RatePoint rate(const LinearRepresentation& rep, double x,
                      double beta_tol = default_beta_residual_tol) {
    const double tau = solve_tau(rep, x, beta_tol);
    const double lambda = perron(rep.matrix_a + rep.matrix_b).lambda;
    const double y_tau = perron(detail::tilted_matrix(rep, tau)).lambda;
    double value = x * tau + std::log(lambda) - std::log(y_tau);
    if (value < 0.0) value = 0.0; // rounding near the minimum at beta(0)
    return {x, tau, value, tau};
}

// Rate function of the binomial law: B(x) = x log(x/p) + (1-x) log((1-x)/(1-p)).
inline double binomial_rate(double p, double x) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("binomial parameter p must lie in (0,1)");
    if (!(x > 0.0 && x < 1.0))
        throw DomainError("binomial rate argument x must lie in (0,1)");
    const double value = x * std::log(x / p) + (1.0 - x) * std::log((1.0 - x) / (1.0 - p));
    return value < 0.0 ? 0.0 : value;
}

// Continuous limits of B at the interval ends.
inline double binomial_rate_at_zero(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("binomial parameter p must lie in (0,1)");
    return std::log(1.0 / (1.0 - p));
}

inline double binomial_rate_at_one(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("binomial parameter p must lie in (0,1)");
    return std::log(1.0 / p);
}

inline RateDomain domain(const LinearRepresentation& rep, double radius_tol = default_radius_tol,
                         double saturation_t = default_saturation_t) {
    RateDomain out;
    const LimitsUV lim = limits_UV(rep, radius_tol, saturation_t);
    out.u_limit = lim.u_limit;
    out.v_limit = lim.v_limit;
    out.open01 = lim.open01;
    out.lambda_a = spectral_radius(rep.matrix_a);
    out.lambda_b = spectral_radius(rep.matrix_b);
    const double lambda = perron(rep.matrix_a + rep.matrix_b).lambda;

    if (out.lambda_b > radius_tol) {
        out.endpoint_left = std::log(lambda / out.lambda_b);
    } else {
        // I evaluated at the edge of the reachable tilt range.
        const auto edge = detail::drift_point(rep, -saturation_t, default_perron_tol);
        out.endpoint_left =
            edge.beta * -saturation_t + std::log(lambda) - std::log(edge.pd.lambda);
    }
    if (out.lambda_a > radius_tol) {
        out.endpoint_right = std::log(lambda / out.lambda_a);
    } else {
        const auto edge = detail::drift_point(rep, saturation_t, default_perron_tol);
        out.endpoint_right =
            edge.beta * saturation_t + std::log(lambda) - std::log(edge.pd.lambda);
    }
    return out;
}

struct RateCurveEntry {
    double x = 0.0;
    std::optional<RatePoint> point; // empty when the grid point is out of domain
    std::string reason;             // diagnostic for out-of-domain points
};

// One entry per grid value, in grid order. Out-of-domain points are marked
// per entry instead of aborting the batch; genuine numerical failures
// (non-convergence) still propagate.
inline std::vector<RateCurveEntry> rate_curve(const LinearRepresentation& rep,
                                              const std::vector<double>& grid,
                                              double beta_tol = default_beta_residual_tol) {
    std::vector<RateCurveEntry> out;
    out.reserve(grid.size());
    for (double x : grid) {
        RateCurveEntry entry;
        entry.x = x;
        try {
            entry.point = rate(rep, x, beta_tol);
        } catch (const DomainError& e) {
            entry.reason = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace patrate
