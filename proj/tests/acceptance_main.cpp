// Acceptance suite: one line per criterion, nonzero exit iff any fails.
// Each check pins its tolerance in code; criteria with a runtime budget
// enforce it with a wall clock (build in Release mode).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <patrate/patrate.hpp>

using namespace patrate;

namespace {

int failures = 0;

struct Criterion {
    int id;
    std::string description;
    std::function<bool(std::string&)> run;
};

LinearRepresentation bernoulli(double p) {
    LinearRepresentation rep;
    rep.dimension = 1;
    rep.xi = {1.0};
    rep.matrix_a = {{p}};
    rep.matrix_b = {{1.0 - p}};
    rep.eta = {1.0};
    return rep;
}

LinearRepresentation uniform2() {
    LinearRepresentation rep;
    rep.dimension = 2;
    rep.xi = {1.0, 1.0};
    rep.matrix_a = {{1.0, 1.0}, {0.0, 0.0}};
    rep.matrix_b = {{0.0, 0.0}, {1.0, 1.0}};
    rep.eta = {1.0, 1.0};
    return rep;
}

LinearRepresentation golden() {
    LinearRepresentation rep;
    rep.dimension = 2;
    rep.xi = {1.0, 1.0};
    rep.matrix_a = {{0.0, 1.0}, {1.0, 0.0}};
    rep.matrix_b = {{1.0, 0.0}, {0.0, 0.0}};
    rep.eta = {1.0, 1.0};
    return rep;
}

std::vector<std::pair<std::string, LinearRepresentation>> example_models() {
    return {{"bernoulli03", bernoulli(0.3)}, {"uniform2", uniform2()}, {"golden", golden()}};
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 99-point grid containing beta exactly: two uniform 50-point halves
// [0.005, beta] and [beta, 0.995] joined at beta.
std::vector<double> beta_anchored_grid(double beta) {
    std::vector<double> grid;
    grid.reserve(99);
    for (int i = 0; i < 50; ++i)
        grid.push_back(0.005 + (beta - 0.005) * i / 49.0);
    for (int i = 1; i < 50; ++i)
        grid.push_back(beta + (0.995 - beta) * i / 49.0);
    grid[49] = beta;
    return grid;
}

bool criterion_binomial_rate_equivalence(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double p : {0.2, 0.5, 0.7}) {
        const auto rep = bernoulli(p);
        for (int i = 1; i <= 19; ++i) {
            const double x = 0.05 * i;
            worst = std::max(worst, std::abs(rate(rep, x).rate - binomial_rate(p, x)));
        }
    }
    const double secs = elapsed_seconds(start);
    char buf[160];
    std::snprintf(buf, sizeof buf, "max |I - B| = %.3e (tol 1e-8), %.2fs (budget 1s)", worst, secs);
    detail = buf;
    return worst <= 1e-8 && secs < 1.0;
}

bool criterion_closed_form_automata(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    double worst_curve = 0.0;
    {
        const auto rep = uniform2();
        for (int i = 1; i <= 99; ++i) {
            const double x = i / 100.0;
            const double expected =
                std::log(2.0) + x * std::log(x) + (1.0 - x) * std::log(1.0 - x);
            worst_curve = std::max(worst_curve, std::abs(rate(rep, x).rate - expected));
        }
    }
    const auto rep = golden();
    const double lambda = perron(rep.matrix_a + rep.matrix_b).lambda;
    const double lambda_expected = (1.0 + std::sqrt(5.0)) / 2.0;
    // beta(0) from y(t) = (1 + sqrt(1 + 4 e^{2t}))/2: y'(0) = 2/sqrt(5)
    const double beta_expected = (2.0 / std::sqrt(5.0)) / lambda_expected;
    const double beta0 = drift(rep, 0.0);
    const double lambda_err = std::abs(lambda - lambda_expected);
    const double beta_err = std::abs(beta0 - beta_expected);
    const double secs = elapsed_seconds(start);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "uniform |I - closed form| = %.3e (tol 1e-10); golden |lambda err| = %.3e, "
                  "|beta err| = %.3e (tol 1e-10), %.2fs (budget 1s)",
                  worst_curve, lambda_err, beta_err, secs);
    detail = buf;
    return worst_curve <= 1e-10 && lambda_err <= 1e-10 && beta_err <= 1e-10 && secs < 1.0;
}

bool criterion_ldp_convergence(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    const auto rep = golden();
    const double beta0 = drift(rep, 0.0);
    const std::vector<std::size_t> lengths = {250, 1000, 4000};
    std::vector<SymbolCountDistribution> dists;
    for (std::size_t n : lengths) dists.push_back(exact_distribution(rep, n));

    bool ok = true;
    std::string parts;
    for (double x : {beta0 - 0.2, beta0 + 0.2}) {
        const double target = rate(rep, x).rate;
        const TailSide side = x >= beta0 ? TailSide::right : TailSide::left;
        std::vector<double> errors;
        for (std::size_t i = 0; i < lengths.size(); ++i) {
            const double emp = -tail(dists[i], x, side) / static_cast<double>(lengths[i]);
            errors.push_back(std::abs(emp - target));
        }
        ok = ok && errors[0] > errors[1] && errors[1] > errors[2] && errors[2] <= 0.02;
        char buf[120];
        std::snprintf(buf, sizeof buf, " x=%.4f errs=(%.4f,%.4f,%.4f)", x, errors[0], errors[1],
                      errors[2]);
        parts += buf;
    }
    const double secs = elapsed_seconds(start);
    char buf[80];
    std::snprintf(buf, sizeof buf, " (strictly decreasing, final <= 0.02), %.1fs (budget 60s)",
                  secs);
    detail = parts + buf;
    return ok && secs < 60.0;
}

bool criterion_stirling_gap(std::string& detail) {
    const auto rep = bernoulli(0.5);
    const double target = binomial_rate(0.5, 0.6);
    bool ok = true;
    std::string parts;
    for (std::size_t n : {256, 1024, 4096}) {
        const double gap = std::abs(empirical_rate(rep, n, 0.6) - target);
        const double envelope = 5.0 * std::log(static_cast<double>(n)) / static_cast<double>(n);
        ok = ok && gap <= envelope;
        char buf[96];
        std::snprintf(buf, sizeof buf, " n=%zu gap=%.5f (env %.5f)", n, gap, envelope);
        parts += buf;
    }
    detail = parts;
    return ok;
}

bool criterion_oracle_equivalence(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const auto& [name, rep] : example_models()) {
        for (std::size_t n = 0; n <= 14; ++n) {
            const auto fast = exact_distribution(rep, n);
            const auto slow = brute_force_distribution(rep, n);
            for (std::size_t k = 0; k <= n; ++k)
                worst = std::max(worst, std::abs(fast.prob(k) - slow.prob(k)));
        }
    }
    const double secs = elapsed_seconds(start);
    char buf[140];
    std::snprintf(buf, sizeof buf, "max |p_dp - p_enum| = %.3e (tol 1e-12), %.2fs (budget 30s)",
                  worst, secs);
    detail = buf;
    return worst <= 1e-12 && secs < 30.0;
}

bool criterion_tilt_identity(std::string& detail) {
    const auto rep = golden();
    double worst = 0.0;
    for (double t : {-2.0, -0.5, 0.5, 2.0}) {
        const auto tilted_rep = tilt(rep, t);
        for (std::size_t n = 1; n <= 200; ++n) {
            const auto plain = exact_distribution(rep, n);
            const auto tilted = exact_distribution(tilted_rep, n);
            const double log_psi = moment_generating(rep, n, t);
            for (std::size_t k = 0; k <= n; ++k) {
                if (plain.log_weights[k] == neg_inf) {
                    if (tilted.log_weights[k] != neg_inf) return false;
                    continue;
                }
                const double reconstructed =
                    tilted.log_prob(k) + log_psi - t * static_cast<double>(k);
                worst = std::max(worst, std::abs(std::exp(reconstructed - plain.log_prob(k)) - 1.0));
            }
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "max relative error = %.3e (tol 1e-9), all n <= 200", worst);
    detail = buf;
    return worst <= 1e-9;
}

bool criterion_moment_asymptotics(std::string& detail) {
    bool ok = true;
    std::string parts;
    for (const auto& [name, rep] : example_models()) {
        const auto cp = curve_point(rep, 0.0);
        const auto m2000 = moments(exact_distribution(rep, 2000));
        const auto m2001 = moments(exact_distribution(rep, 2001));
        const double drift_err = std::abs(m2001.mean - m2000.mean - cp.beta);
        const double var_err = std::abs(m2000.variance / 2000.0 - cp.gamma);
        ok = ok && drift_err <= 1e-6 && var_err <= 1e-3;
        char buf[140];
        std::snprintf(buf, sizeof buf, " %s: |dE - beta| = %.2e (1e-6), |Var/n - gamma| = %.2e (1e-3)",
                      name.c_str(), drift_err, var_err);
        parts += buf;
    }
    detail = parts;
    return ok;
}

bool criterion_quasi_power(std::string& detail) {
    const auto rep = golden();
    const double lambda = perron(rep.matrix_a + rep.matrix_b).lambda;
    bool ok = true;
    std::string parts;
    for (double t : {-1.0, 0.5, 1.0}) {
        const double y = perron(patrate::detail::tilted_matrix(rep, t)).lambda;
        const double r = quasi_power_factor(rep, t);
        const double value = std::exp(moment_generating(rep, 500, t) +
                                      500.0 * (std::log(lambda) - std::log(y)));
        const double err = std::abs(value - r);
        ok = ok && err <= 1e-6;
        char buf[96];
        std::snprintf(buf, sizeof buf, " t=%.1f |Psi (lambda/y)^n - r| = %.2e", t, err);
        parts += buf;
    }
    detail = parts + " (tol 1e-6 at n = 500)";
    return ok;
}

bool criterion_rate_shape(std::string& detail) {
    bool ok = true;
    std::string parts;
    for (const auto& [name, rep] : example_models()) {
        const double beta0 = drift(rep, 0.0);
        const auto grid = beta_anchored_grid(beta0);
        std::vector<double> values;
        values.reserve(grid.size());
        for (double x : grid) values.push_back(rate(rep, x).rate);

        // convex: second divided differences >= -1e-9
        double min_curvature = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            const double h1 = grid[i] - grid[i - 1];
            const double h2 = grid[i + 1] - grid[i];
            const double divided =
                ((values[i + 1] - values[i]) / h2 - (values[i] - values[i - 1]) / h1) /
                (h1 + h2);
            min_curvature = std::min(min_curvature, divided);
        }
        const bool convex = min_curvature >= -1e-9;

        // minimum at the grid point nearest beta with value <= 1e-6
        std::size_t argmin = 0;
        std::size_t nearest = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (values[i] < values[argmin]) argmin = i;
            if (std::abs(grid[i] - beta0) < std::abs(grid[nearest] - beta0)) nearest = i;
        }
        const bool minimum_ok = argmin == nearest && values[argmin] <= 1e-6;

        // finite-difference derivative matches tau within 1e-4
        double worst_fd = 0.0;
        const double h = 1e-5;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double x = grid[i];
            const double fd = (rate(rep, x + h).rate - rate(rep, x - h).rate) / (2.0 * h);
            worst_fd = std::max(worst_fd, std::abs(fd - rate(rep, x).tau));
        }
        const bool derivative_ok = worst_fd <= 1e-4;

        // endpoint approach for open01 models
        const auto dom = domain(rep);
        const double left_err = std::abs(rate(rep, 1e-3).rate - dom.endpoint_left);
        const double right_err = std::abs(rate(rep, 1.0 - 1e-3).rate - dom.endpoint_right);
        const bool endpoints_ok = dom.open01 && left_err <= 0.05 && right_err <= 0.05;

        ok = ok && convex && minimum_ok && derivative_ok && endpoints_ok;
        char buf[220];
        std::snprintf(buf, sizeof buf,
                      " %s: curvature >= %.1e, I(nearest beta) = %.1e, max |dI - tau| = %.1e, "
                      "endpoint errs = (%.3f, %.3f)",
                      name.c_str(), min_curvature, values[argmin], worst_fd, left_err, right_err);
        parts += buf;
    }
    detail = parts;
    return ok;
}

bool criterion_primitivity_oracle(std::string& detail) {
    // boolean-power oracle
    const auto oracle = [](const Matrix& m) {
        const std::size_t dim = m.dim();
        std::vector<char> power(dim * dim), next(dim * dim);
        for (std::size_t i = 0; i < dim * dim; ++i) power[i] = m.values()[i] != 0.0;
        for (std::size_t e = 1; e <= wielandt_exponent(dim); ++e) {
            bool all = true;
            for (char c : power)
                if (!c) {
                    all = false;
                    break;
                }
            if (all) return true;
            std::fill(next.begin(), next.end(), 0);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t k = 0; k < dim; ++k) {
                    if (!power[i * dim + k]) continue;
                    for (std::size_t j = 0; j < dim; ++j)
                        if (m(k, j) != 0.0) next[i * dim + j] = 1;
                }
            power = next;
        }
        return false;
    };

    std::size_t checked = 0;
    // hand-picked periodic and boundary cases
    std::vector<Matrix> cases = {
        Matrix{{0, 1}, {1, 0}},                         // period 2
        Matrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}},        // period 3
        Matrix{{0}},                                    // no cycle
        Matrix{{1}},                                    // aperiodic loop
        Matrix{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}}, // Wielandt-extremal
        Matrix{{0, 1}, {0, 0}},                         // nilpotent
        Matrix{{1, 1}, {0, 1}},                         // reducible
    };
    std::mt19937_64 rng(424242);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t dim = 1 + rng() % 6;
        Matrix m(dim);
        const double density = 0.1 + 0.8 * static_cast<double>(rng() % 100) / 100.0;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                m(r, c) = (static_cast<double>(rng() % 1000) / 1000.0 < density) ? 1.0 : 0.0;
        cases.push_back(m);
    }
    for (const auto& m : cases) {
        if (is_primitive(m) != oracle(m)) {
            detail = "disagreement on a " + std::to_string(m.dim()) + "x" +
                     std::to_string(m.dim()) + " matrix after " + std::to_string(checked) +
                     " agreements";
            return false;
        }
        ++checked;
    }
    detail = std::to_string(checked) + " matrices agree (1000 random + hand-picked periodic)";
    return true;
}

bool criterion_sampler_fidelity(std::string& detail) {
    const auto rep = golden();
    const std::size_t n = 50, samples = 100000;
    const std::uint64_t seed = 20240811;
    const auto s1 = sample_counts(rep, n, samples, seed);
    const auto s2 = sample_counts(rep, n, samples, seed);
    const bool reproducible = s1.counts == s2.counts;

    const auto dist = exact_distribution(rep, n);
    double tv = 0.0;
    for (std::size_t k = 0; k <= n; ++k)
        tv += std::abs(static_cast<double>(s1.counts[k]) / samples - dist.prob(k));
    tv /= 2.0;

    char buf[120];
    std::snprintf(buf, sizeof buf, "TV distance = %.4f (tol 0.01), re-run identical: %s", tv,
                  reproducible ? "yes" : "no");
    detail = buf;
    return tv <= 0.01 && reproducible;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "binomial rate equivalence", criterion_binomial_rate_equivalence},
        {2, "closed-form automata", criterion_closed_form_automata},
        {3, "large-deviation convergence", criterion_ldp_convergence},
        {4, "Stirling-scale gap for the fair coin", criterion_stirling_gap},
        {5, "dynamic program vs exhaustive enumeration", criterion_oracle_equivalence},
        {6, "tilt change-of-measure identity", criterion_tilt_identity},
        {7, "moment asymptotics", criterion_moment_asymptotics},
        {8, "quasi-power convergence", criterion_quasi_power},
        {9, "rate-function shape", criterion_rate_shape},
        {10, "primitivity checker vs boolean-power oracle", criterion_primitivity_oracle},
        {11, "sampler fidelity", criterion_sampler_fidelity},
    };

    for (const auto& criterion : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s  %2d  %s — %s\n", ok ? "PASS" : "FAIL", criterion.id,
                    criterion.description.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
