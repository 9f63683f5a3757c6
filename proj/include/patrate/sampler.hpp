// Exact sampling of words under the model measure Pr(w) = weight(w)/total.
// Backward vectors g_j = (A+B)^{n-j} eta are precomputed once (log-scaled per
// index) and shared read-only across samples; the forward pass then emits
// symbol 'a' at position j with probability s A g_{j+1} / s (A+B) g_{j+1}.
// The telescoping product of step probabilities is exactly the model
// probability of the sampled word.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "model.hpp"
#include "philox.hpp"

namespace patrate {

inline constexpr std::size_t default_sampler_max_n = 1'000'000;

struct SampleSummary {
    std::size_t n = 0;
    std::size_t num_samples = 0;
    std::vector<std::uint64_t> counts; // histogram over k = 0..n, sums to num_samples
    std::uint64_t seed = 0;
};

class SampleTable {
public:
    SampleTable(const LinearRepresentation& rep, std::size_t n,
                std::size_t max_n = default_sampler_max_n)
        : n_(n), dim_(rep.dimension) {
        if (n > max_n)
            throw std::invalid_argument("n = " + std::to_string(n) +
                                        " exceeds the sampler guard (max " +
                                        std::to_string(max_n) + ")");
        // a_continuation[j] = A g_{j+1}, b_continuation[j] = B g_{j+1} with the
        // backward vectors g normalized per index; only ratios are consumed,
        // so the per-index scales cancel.
        a_continuation_.resize(n);
        b_continuation_.resize(n);
        log_scale_.assign(n + 1, 0.0);

        Vec g = rep.eta;
        double norm = sup_norm(g);
        for (double& x : g) x /= norm;
        log_scale_[n] = std::log(norm);
        for (std::size_t j = n; j-- > 0;) {
            a_continuation_[j] = right_mul(rep.matrix_a, g);
            b_continuation_[j] = right_mul(rep.matrix_b, g);
            Vec next(dim_);
            for (std::size_t i = 0; i < dim_; ++i)
                next[i] = a_continuation_[j][i] + b_continuation_[j][i];
            norm = sup_norm(next);
            for (double& x : next) x /= norm;
            log_scale_[j] = log_scale_[j + 1] + std::log(norm);
            g = std::move(next);
        }

        state0_ = rep.xi;
        norm = sup_norm(state0_);
        for (double& x : state0_) x /= norm;

        matrix_a_ = rep.matrix_a;
        matrix_b_ = rep.matrix_b;
    }

    std::size_t word_length() const { return n_; }
    const Vec& initial_state() const { return state0_; }

    // Probability of emitting 'a' at position j given the forward state.
    double prob_a(std::size_t j, const Vec& state) const {
        const double wa = dot(state, a_continuation_[j]);
        const double wb = dot(state, b_continuation_[j]);
        return wa / (wa + wb);
    }

    // Advance the forward state by one symbol, renormalized to unit sup-norm.
    void advance(Vec& state, char symbol) const {
        state = left_mul(state, symbol == 'a' ? matrix_a_ : matrix_b_);
        const double norm = sup_norm(state);
        for (double& x : state) x /= norm;
    }

private:
    std::size_t n_;
    std::size_t dim_;
    std::vector<Vec> a_continuation_;
    std::vector<Vec> b_continuation_;
    std::vector<double> log_scale_;
    Vec state0_;
    Matrix matrix_a_;
    Matrix matrix_b_;
};

namespace detail {

// One word from the given stream; appends to `word` if non-null, returns the
// 'a'-count.
inline std::size_t sample_one(const SampleTable& table, PhiloxStream& rng, std::string* word) {
    Vec state = table.initial_state();
    std::size_t count_a = 0;
    for (std::size_t j = 0; j < table.word_length(); ++j) {
        const double pa = table.prob_a(j, state);
        const char symbol = rng.next_uniform() < pa ? 'a' : 'b';
        count_a += symbol == 'a';
        if (word) word->push_back(symbol);
        table.advance(state, symbol);
    }
    return count_a;
}

} // namespace detail

inline std::string sample_word(const LinearRepresentation& rep, std::size_t n, PhiloxStream& rng,
                               std::size_t max_n = default_sampler_max_n) {
    const SampleTable table(rep, n, max_n);
    std::string word;
    word.reserve(n);
    detail::sample_one(table, rng, &word);
    return word;
}

// Histogram of |w|_a over num_samples independent draws; sample i uses the
// Philox stream (seed, i), so the result does not depend on evaluation order.
inline SampleSummary sample_counts(const LinearRepresentation& rep, std::size_t n,
                                   std::size_t num_samples, std::uint64_t seed,
                                   std::size_t max_n = default_sampler_max_n) {
    const SampleTable table(rep, n, max_n);
    SampleSummary out;
    out.n = n;
    out.num_samples = num_samples;
    out.seed = seed;
    out.counts.assign(n + 1, 0);
    for (std::size_t i = 0; i < num_samples; ++i) {
        PhiloxStream rng(seed, i);
        ++out.counts[detail::sample_one(table, rng, nullptr)];
    }
    return out;
}

} // namespace patrate
