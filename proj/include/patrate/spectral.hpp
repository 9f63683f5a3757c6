// Perron-Frobenius data of primitive matrices and the spectral curve of the
// tilted family A e^t + B: y(t) (dominant eigenvalue), its derivative
// y'(t) = v_t' A e^t u_t, the drift beta(t) = y'(t)/y(t) and the variance
// coefficient gamma(t) = beta'(t).

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "errors.hpp"
#include "matrix.hpp"
#include "model.hpp"

namespace patrate {

inline constexpr double default_perron_tol = 1e-12;
inline constexpr std::size_t default_perron_max_iterations = 1'000'000;

// Saturation bound for drift-limit estimation: beta(t) approaches its limits
// like e^{-|t|}, so at |t| = 30 the residual gap is ~1e-13 while beta itself
// is still strictly inside (0,1) in double precision.
inline constexpr double default_saturation_t = 30.0;

// Spectral radii below this are treated as (numerically) zero when checking
// the "A and B both have a nonnull eigenvalue" hypothesis.
inline constexpr double default_radius_tol = 1e-9;

struct PerronData {
    double lambda = 0.0; // dominant eigenvalue
    Vec u;               // right eigenvector, entries > 0, scaled to unit sum
    Vec v;               // left eigenvector, entries > 0, scaled so v'u = 1
    double residual = 0.0; // max over both sides of ||M w - lambda w||_inf / (||M||_inf ||w||_inf)
};

namespace detail {

inline double relative_residual(const Vec& w, const Vec& mw, double lambda, double matrix_norm) {
    double hi = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double r = std::abs(mw[i] - lambda * w[i]);
        if (r > hi) hi = r;
    }
    const double wn = sup_norm(w);
    return hi / (matrix_norm * (wn > 0.0 ? wn : 1.0));
}

} // namespace detail

// Power iteration with an adaptive spectral shift. Iterating on
// M + c I (c = current Rayleigh estimate) leaves the eigenvectors unchanged
// and maps eigenvalues mu to mu + c, so the near-periodic matrices that arise
// for large |t| (subdominant eigenvalue close to -lambda) still converge
// geometrically. lambda and the residual are always evaluated on M itself.
// Deterministic: all-ones start vectors, fixed normalizations.
inline PerronData perron(const Matrix& m, double tol = default_perron_tol,
                         std::size_t max_iterations = default_perron_max_iterations) {
    if (!(tol > 0.0))
        throw DomainError("perron tolerance must be positive");
    if (!is_primitive(m))
        throw ModelError("matrix is not primitive; Perron data is undefined");

    const std::size_t dim = m.dim();
    const Matrix mt = transposed(m);
    const double matrix_norm = inf_norm(m); // > 0: a primitive matrix is nonzero

    Vec u(dim, 1.0), v(dim, 1.0);
    double lambda = 0.0;
    double lambda_prev = std::numeric_limits<double>::infinity();
    bool converged = false;

    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        const Vec mu = right_mul(m, u);
        const Vec mv = right_mul(mt, v);

        // Two-sided Rayleigh quotient: quadratically accurate in the
        // eigenvector errors.
        const double vu = dot(v, u);
        lambda = dot(v, mu) / vu;

        const double ru = detail::relative_residual(u, mu, lambda, matrix_norm);
        const double rv = detail::relative_residual(v, mv, lambda, matrix_norm);
        if (ru <= tol && rv <= tol &&
            std::abs(lambda - lambda_prev) <= tol * std::max(std::abs(lambda), 1e-300)) {
            converged = true;
            break;
        }
        lambda_prev = lambda;

        const double cu = dot(u, mu) / dot(u, u);
        const double cv = dot(v, mv) / dot(v, v);
        Vec u_next(dim), v_next(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            u_next[i] = mu[i] + cu * u[i];
            v_next[i] = mv[i] + cv * v[i];
        }
        const double nu = sup_norm(u_next);
        const double nv = sup_norm(v_next);
        for (std::size_t i = 0; i < dim; ++i) {
            u[i] = u_next[i] / nu;
            v[i] = v_next[i] / nv;
        }
    }
    if (!converged)
        throw ConvergenceError("perron: power iteration did not reach tolerance " +
                               std::to_string(tol) + " within " +
                               std::to_string(max_iterations) +
                               " iterations (tolerance too tight?)");

    // Fixed normalization: u to unit sum, then v so that v'u = 1.
    double usum = 0.0;
    for (double x : u) usum += x;
    for (double& x : u) x /= usum;
    const double vu = dot(v, u);
    for (double& x : v) x /= vu;

    const Vec mu = right_mul(m, u);
    const Vec mv = right_mul(mt, v);
    lambda = dot(v, mu); // v'u = 1
    PerronData out;
    out.lambda = lambda;
    out.u = std::move(u);
    out.v = std::move(v);
    out.residual = std::max(detail::relative_residual(out.u, mu, lambda, matrix_norm),
                            detail::relative_residual(out.v, mv, lambda, matrix_norm));
    return out;
}

// Largest eigenvalue modulus of a non-negative matrix (itself an eigenvalue).
// Power iteration on M + I from the all-ones vector breaks periodicity (the
// swap matrix maps to an aperiodic one); the Rayleigh-quotient limit minus 1
// is returned. Nilpotent matrices (acyclic pattern) return exactly 0. Total:
// after the iteration cap the best estimate is returned rather than throwing.
inline double spectral_radius(const Matrix& m,
                              std::size_t max_iterations = default_perron_max_iterations) {
    if (m.dim() == 0) return 0.0;
    if (!has_cycle(m)) return 0.0;

    const std::size_t dim = m.dim();
    Vec x(dim, 1.0);
    double rq = 1.0;
    double rq_prev = std::numeric_limits<double>::infinity();
    int stable = 0;
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        Vec y = right_mul(m, x);
        for (std::size_t i = 0; i < dim; ++i) y[i] += x[i]; // (M + I) x
        rq = dot(x, y) / dot(x, x);
        if (std::abs(rq - rq_prev) <= 1e-13 * rq) {
            if (++stable >= 3) break;
        } else {
            stable = 0;
        }
        rq_prev = rq;
        const double norm = sup_norm(y);
        for (std::size_t i = 0; i < dim; ++i) x[i] = y[i] / norm;
    }
    return std::max(rq - 1.0, 0.0);
}

struct SpectralCurvePoint {
    double t = 0.0;
    double y = 0.0;       // Perron eigenvalue of A e^t + B
    double y_prime = 0.0; // v_t' A e^t u_t
    double beta = 0.0;    // y'/y, strictly inside (0,1)
    double gamma = 0.0;   // beta'(t) > 0
};

namespace detail {

inline Matrix tilted_matrix(const LinearRepresentation& rep, double t) {
    return scaled(rep.matrix_a, std::exp(t)) + rep.matrix_b;
}

struct DriftPoint {
    PerronData pd;
    double y_prime = 0.0;
    double beta = 0.0;
};

inline DriftPoint drift_point(const LinearRepresentation& rep, double t, double tol) {
    DriftPoint out;
    out.pd = perron(tilted_matrix(rep, t), tol);
    const Vec au = right_mul(scaled(rep.matrix_a, std::exp(t)), out.pd.u);
    out.y_prime = dot(out.pd.v, au); // v'u = 1
    double beta = out.y_prime / out.pd.lambda;
    // Mathematically 0 < beta < 1; for |t| beyond ~36 the value rounds onto
    // an endpoint, so keep it inside the open interval.
    beta = std::max(beta, std::numeric_limits<double>::min());
    beta = std::min(beta, std::nextafter(1.0, 0.0));
    out.beta = beta;
    return out;
}

} // namespace detail

// beta(t) alone, without the finite-difference work for gamma.
inline double drift(const LinearRepresentation& rep, double t, double tol = default_perron_tol) {
    return detail::drift_point(rep, t, tol).beta;
}

// Full curve point. gamma = beta'(t) via a central difference of the exact
// beta with step h = 1e-4 max(1,|t|), Richardson-extrapolated once, clamped
// positive.
inline SpectralCurvePoint curve_point(const LinearRepresentation& rep, double t,
                                      double tol = default_perron_tol,
                                      double max_abs_t = default_tilt_bound) {
    if (!(std::abs(t) <= max_abs_t))
        throw DomainError("curve parameter t = " + std::to_string(t) +
                          " exceeds the configured bound |t| <= " + std::to_string(max_abs_t));
    const auto dp = detail::drift_point(rep, t, tol);
    const double h = 1e-4 * std::max(1.0, std::abs(t));
    const double d_full = (drift(rep, t + h, tol) - drift(rep, t - h, tol)) / (2.0 * h);
    const double d_half = (drift(rep, t + h / 2, tol) - drift(rep, t - h / 2, tol)) / h;
    double gamma = (4.0 * d_half - d_full) / 3.0;
    gamma = std::max(gamma, std::numeric_limits<double>::min());

    SpectralCurvePoint out;
    out.t = t;
    out.y = dp.pd.lambda;
    out.y_prime = dp.y_prime;
    out.beta = dp.beta;
    out.gamma = gamma;
    return out;
}

// r(t) = (xi' u_t)(v_t' eta) / ((xi' u_0)(v_0' eta)): the constant factor of
// the quasi-power relation Psi_n(t) ~ r(t) (y(t)/lambda)^n. r(0) = 1 exactly.
inline double quasi_power_factor(const LinearRepresentation& rep, double t,
                                 double tol = default_perron_tol) {
    const PerronData pd_t = perron(detail::tilted_matrix(rep, t), tol);
    const PerronData pd_0 = perron(detail::tilted_matrix(rep, 0.0), tol);
    return (dot(rep.xi, pd_t.u) * dot(pd_t.v, rep.eta)) /
           (dot(rep.xi, pd_0.u) * dot(pd_0.v, rep.eta));
}

struct LimitsUV {
    double u_limit = 0.0; // lim_{t -> -inf} beta(t)
    double v_limit = 1.0; // lim_{t -> +inf} beta(t)
    bool open01 = false;  // true iff both limits are exactly (0,1) by the radii test
};

// (U, V): exact (0,1) when both A and B have positive spectral radius;
// otherwise numerical estimates beta(-T), beta(+T) at the saturation bound,
// flagged by open01 = false.
inline LimitsUV limits_UV(const LinearRepresentation& rep, double radius_tol = default_radius_tol,
                          double saturation_t = default_saturation_t) {
    const double rho_a = spectral_radius(rep.matrix_a);
    const double rho_b = spectral_radius(rep.matrix_b);
    if (rho_a > radius_tol && rho_b > radius_tol)
        return {0.0, 1.0, true};
    return {drift(rep, -saturation_t), drift(rep, saturation_t), false};
}

} // namespace patrate
