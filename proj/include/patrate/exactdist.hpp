// Exact law of Y_n (number of 'a' occurrences in a random length-n word):
// p_n(k) = [x^k] xi'(Ax+B)^n eta / xi'(A+B)^n eta, computed by dynamic
// programming over state row-vectors indexed by 'a'-count. Every cell carries
// its own log-scale, so weights spanning thousands of orders of magnitude
// (tails decay like e^{-I(x) n}) stay representable.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "model.hpp"
#include "numeric.hpp"
#include "spectral.hpp"

namespace patrate {

inline constexpr std::size_t default_distribution_max_n = 10'000; // DP is O(n^2 m^2)
inline constexpr std::size_t default_brute_force_max_n = 16;
inline constexpr std::size_t default_mgf_max_n = 1'000'000; // O(n m^2)

struct SymbolCountDistribution {
    std::size_t n = 0;
    Vec log_weights;         // log [x^k] xi'(Ax+B)^n eta, -inf for exact zero
    double log_total = 0.0;  // log xi'(A+B)^n eta

    double log_prob(std::size_t k) const { return log_weights[k] - log_total; }
    double prob(std::size_t k) const {
        const double lw = log_weights[k];
        return lw == neg_inf ? 0.0 : std::exp(lw - log_total);
    }
};

struct MomentSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;
    double mean_drift = 0.0;      // mean - beta(0) n, NaN unless beta(0) was supplied
    double variance_per_n = 0.0;
};

enum class TailSide { left, right };

// W_{j+1,k} = W_{j,k} B + W_{j,k-1} A with W_{0,0} = xi', finished against
// eta. Each (j,k) cell is a row vector normalized to unit sup-norm with an
// accumulated log-scale; a zero cell is marked by log-scale = -inf.
inline SymbolCountDistribution exact_distribution(const LinearRepresentation& rep, std::size_t n,
                                                  std::size_t max_n = default_distribution_max_n) {
    if (n > max_n)
        throw std::invalid_argument("n = " + std::to_string(n) +
                                    " exceeds the distribution cost guard (max " +
                                    std::to_string(max_n) + ")");
    const std::size_t m = rep.dimension;
    const Matrix& a = rep.matrix_a;
    const Matrix& b = rep.matrix_b;

    std::vector<double> cur((n + 1) * m, 0.0), next((n + 1) * m, 0.0);
    std::vector<double> cur_scale(n + 1, neg_inf), next_scale(n + 1, neg_inf);

    {
        const double norm = sup_norm(rep.xi);
        for (std::size_t i = 0; i < m; ++i) cur[i] = rep.xi[i] / norm;
        cur_scale[0] = std::log(norm);
    }

    Vec from_b(m), from_a(m);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k <= j + 1; ++k) {
            const bool have_b = k <= j && cur_scale[k] != neg_inf;
            const bool have_a = k >= 1 && cur_scale[k - 1] != neg_inf;
            double* out = &next[k * m];
            if (!have_b && !have_a) {
                next_scale[k] = neg_inf;
                continue;
            }
            if (have_b) {
                const double* src = &cur[k * m];
                for (std::size_t col = 0; col < m; ++col) {
                    double acc = 0.0;
                    for (std::size_t i = 0; i < m; ++i) acc += src[i] * b(i, col);
                    from_b[col] = acc;
                }
            }
            if (have_a) {
                const double* src = &cur[(k - 1) * m];
                for (std::size_t col = 0; col < m; ++col) {
                    double acc = 0.0;
                    for (std::size_t i = 0; i < m; ++i) acc += src[i] * a(i, col);
                    from_a[col] = acc;
                }
            }
            const double scale_b = have_b ? cur_scale[k] : neg_inf;
            const double scale_a = have_a ? cur_scale[k - 1] : neg_inf;
            const double scale = scale_b > scale_a ? scale_b : scale_a;
            const double wb = have_b ? std::exp(scale_b - scale) : 0.0;
            const double wa = have_a ? std::exp(scale_a - scale) : 0.0;
            double norm = 0.0;
            for (std::size_t col = 0; col < m; ++col) {
                const double x = (have_b ? wb * from_b[col] : 0.0) + (have_a ? wa * from_a[col] : 0.0);
                out[col] = x;
                if (x > norm) norm = x;
            }
            if (norm == 0.0) {
                next_scale[k] = neg_inf;
                continue;
            }
            for (std::size_t col = 0; col < m; ++col) out[col] /= norm;
            next_scale[k] = scale + std::log(norm);
        }
        cur.swap(next);
        cur_scale.swap(next_scale);
    }

    SymbolCountDistribution dist;
    dist.n = n;
    dist.log_weights.assign(n + 1, neg_inf);
    for (std::size_t k = 0; k <= n; ++k) {
        if (cur_scale[k] == neg_inf) continue;
        double w = 0.0;
        for (std::size_t i = 0; i < m; ++i) w += cur[k * m + i] * rep.eta[i];
        if (w > 0.0) dist.log_weights[k] = cur_scale[k] + std::log(w);
    }
    dist.log_total = total_weight(rep, n);
    if (dist.log_total == neg_inf)
        throw DomainError("total weight at length " + std::to_string(n) +
                          " is zero; the model assigns no word positive weight");
    return dist;
}

// Exhaustive oracle: sums weight_of_word over all 2^n words grouped by
// 'a'-count. Independent of the DP above by construction.
inline SymbolCountDistribution brute_force_distribution(const LinearRepresentation& rep,
                                                        std::size_t n,
                                                        std::size_t max_n = default_brute_force_max_n) {
    if (n > max_n)
        throw std::invalid_argument("n = " + std::to_string(n) +
                                    " is too large for exhaustive enumeration (max " +
                                    std::to_string(max_n) + ")");
    std::vector<double> weight_by_count(n + 1, 0.0);
    std::string word(n, 'b');
    const std::uint64_t total_words = std::uint64_t(1) << n;
    for (std::uint64_t bits = 0; bits < total_words; ++bits) {
        std::size_t count_a = 0;
        for (std::size_t pos = 0; pos < n; ++pos) {
            const bool is_a = (bits >> pos) & 1u;
            word[pos] = is_a ? 'a' : 'b';
            count_a += is_a;
        }
        weight_by_count[count_a] += weight_of_word(rep, word);
    }

    SymbolCountDistribution dist;
    dist.n = n;
    dist.log_weights.assign(n + 1, neg_inf);
    double total = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        total += weight_by_count[k];
        if (weight_by_count[k] > 0.0) dist.log_weights[k] = std::log(weight_by_count[k]);
    }
    if (total <= 0.0)
        throw DomainError("total weight at length " + std::to_string(n) + " is zero");
    dist.log_total = std::log(total);
    return dist;
}

// Mean and variance in compensated two-pass summation. mean_drift reports
// mean - drift_per_step * n when the caller supplies beta(0).
inline MomentSummary moments(const SymbolCountDistribution& dist,
                             double drift_per_step = std::numeric_limits<double>::quiet_NaN()) {
    CompensatedSum mean_sum;
    for (std::size_t k = 0; k <= dist.n; ++k)
        mean_sum.add(static_cast<double>(k) * dist.prob(k));
    const double mean = mean_sum.value();

    CompensatedSum var_sum;
    for (std::size_t k = 0; k <= dist.n; ++k) {
        const double d = static_cast<double>(k) - mean;
        var_sum.add(d * d * dist.prob(k));
    }

    MomentSummary out;
    out.n = dist.n;
    out.mean = mean;
    out.variance = var_sum.value();
    out.mean_drift = mean - drift_per_step * static_cast<double>(dist.n);
    out.variance_per_n = dist.n > 0 ? out.variance / static_cast<double>(dist.n) : 0.0;
    return out;
}

// log Pr(Y_n >= xn) (right) or log Pr(Y_n <= xn) (left). The threshold is
// inclusive: right sums k >= ceil(xn) which includes k = xn when xn is
// integral, left sums k <= floor(xn) likewise. A snap tolerance absorbs the
// floating-point representation of x*n.
inline double tail(const SymbolCountDistribution& dist, double x, TailSide side) {
    if (!(x >= 0.0 && x <= 1.0))
        throw DomainError("tail threshold x must lie in [0,1]");
    const double xn = x * static_cast<double>(dist.n);
    std::vector<double> log_probs(dist.n + 1);
    for (std::size_t k = 0; k <= dist.n; ++k) log_probs[k] = dist.log_prob(k);
    if (side == TailSide::right) {
        const double lo = std::ceil(xn - 1e-9);
        const std::size_t first = lo <= 0.0 ? 0 : static_cast<std::size_t>(lo);
        if (first > dist.n) return neg_inf;
        return log_sum_exp(log_probs, first, dist.n + 1);
    }
    const double hi = std::floor(xn + 1e-9);
    if (hi < 0.0) return neg_inf;
    const std::size_t last = std::min(static_cast<std::size_t>(hi), dist.n);
    return log_sum_exp(log_probs, 0, last + 1);
}

// -(1/n) log of the tail at x, with the tail side chosen by the drift:
// right for x >= beta(0), left otherwise.
inline double empirical_rate(const LinearRepresentation& rep, std::size_t n, double x,
                             std::size_t max_n = default_distribution_max_n) {
    if (n == 0)
        throw std::invalid_argument("empirical rate needs n >= 1");
    if (!(x > 0.0 && x < 1.0))
        throw DomainError("empirical rate threshold x must lie in (0,1)");
    const double beta0 = drift(rep, 0.0);
    const auto dist = exact_distribution(rep, n, max_n);
    const TailSide side = x >= beta0 ? TailSide::right : TailSide::left;
    return -tail(dist, x, side) / static_cast<double>(n);
}

// log Psi_n(t) = log xi'(A e^t + B)^n eta - log xi'(A+B)^n eta via scaled
// matrix-vector powering; O(n m^2), no distribution needed.
inline double moment_generating(const LinearRepresentation& rep, std::size_t n, double t,
                                double max_abs_t = default_tilt_bound,
                                std::size_t max_n = default_mgf_max_n) {
    if (!(std::abs(t) <= max_abs_t))
        throw DomainError("moment generating parameter t = " + std::to_string(t) +
                          " exceeds the configured bound |t| <= " + std::to_string(max_abs_t));
    if (n > max_n)
        throw std::invalid_argument("n = " + std::to_string(n) +
                                    " exceeds the moment-generating cost guard (max " +
                                    std::to_string(max_n) + ")");
    const double tilted = detail::log_weight_of_power(
        rep.xi, scaled(rep.matrix_a, std::exp(t)) + rep.matrix_b, n, rep.eta);
    const double plain = detail::log_weight_of_power(rep.xi, rep.matrix_a + rep.matrix_b, n, rep.eta);
    return tilted - plain;
}

} // namespace patrate
