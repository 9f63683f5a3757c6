// Log-space accumulation helpers. Tail probabilities in this library reach
// e^{-I(x) n} with I(x) n in the hundreds, far below the smallest double, so
// every probability-sized quantity is carried as a logarithm and sums are
// taken with log-sum-exp. -infinity stands for an exact zero weight.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace patrate {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b) without leaving log space.
inline double log_add(double a, double b) {
    if (a == neg_inf) return b;
    if (b == neg_inf) return a;
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

// log sum_i e^{v[i]} over an index range [first, last).
inline double log_sum_exp(const std::vector<double>& v, std::size_t first, std::size_t last) {
    double hi = neg_inf;
    for (std::size_t i = first; i < last; ++i)
        if (v[i] > hi) hi = v[i];
    if (hi == neg_inf) return neg_inf;
    double sum = 0.0;
    for (std::size_t i = first; i < last; ++i)
        sum += std::exp(v[i] - hi);
    return hi + std::log(sum);
}

inline double log_sum_exp(const std::vector<double>& v) {
    return log_sum_exp(v, 0, v.size());
}

// Neumaier variant of Kahan summation; keeps moment sums accurate to a few
// ulp even when thousands of terms of mixed magnitude are accumulated.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace patrate
