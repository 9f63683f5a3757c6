// Linear representations (xi, A, B, eta) of rational series over {a,b}:
// parsing, primitivity, exponential tilting and elementary weight
// computations. The weight of a word w is xi' mu(w) eta with mu(a) = A,
// mu(b) = B; the induced measure on length-n words is Pr(w) proportional
// to that weight.

#pragma once

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "matrix.hpp"
#include "numeric.hpp"

namespace patrate {

// Default bound on |t| for exponential tilts. e^50 is nowhere near double
// overflow, and every drift curve in this library is saturated flat long
// before |t| = 50.
inline constexpr double default_tilt_bound = 50.0;

struct LinearRepresentation {
    std::size_t dimension = 0;
    Vec xi;          // initial weights, >= 0, not all zero
    Matrix matrix_a; // transition weights labelled 'a', >= 0, nonzero
    Matrix matrix_b; // transition weights labelled 'b', >= 0, nonzero
    Vec eta;         // final weights, >= 0, not all zero
};

// Worst-case power at which a primitive m x m matrix is entrywise positive.
inline std::size_t wielandt_exponent(std::size_t m) {
    return (m - 1) * (m - 1) + 1;
}

// Primitive <=> the digraph of nonzero entries is strongly connected and the
// gcd of its cycle lengths is 1. Decided exactly on the pattern; the
// boolean-matrix-power characterization is kept as a test oracle only.
inline bool is_primitive(const Matrix& m) {
    if (m.dim() == 0) return false;
    if (!strongly_connected(m)) return false;
    return graph_period(m) == 1;
}

namespace detail {

inline double json_to_weight(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number())
        throw ParseError(where + " is not a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw ParseError(where + " is not finite");
    if (x < 0.0)
        throw ParseError(where + " is a negative entry (" + v.dump() + ")");
    return x;
}

inline Vec parse_weight_vector(const nlohmann::json& doc, const std::string& name, std::size_t m) {
    const auto& v = doc.at(name);
    if (!v.is_array() || v.size() != m)
        throw ParseError("\"" + name + "\" must be an array of " + std::to_string(m) + " numbers");
    Vec out(m);
    for (std::size_t i = 0; i < m; ++i)
        out[i] = json_to_weight(v[i], name + "[" + std::to_string(i) + "]");
    return out;
}

inline Matrix parse_weight_matrix(const nlohmann::json& doc, const std::string& name, std::size_t m) {
    const auto& rows = doc.at(name);
    if (!rows.is_array() || rows.size() != m)
        throw ParseError("\"" + name + "\" must be an array of " + std::to_string(m) + " rows");
    Matrix out(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != m)
            throw ParseError(name + "[" + std::to_string(i) + "] must be an array of " +
                             std::to_string(m) + " numbers");
        for (std::size_t j = 0; j < m; ++j)
            out(i, j) = json_to_weight(
                row[j], name + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return out;
}

inline bool all_zero(const Vec& v) {
    for (double x : v)
        if (x != 0.0) return false;
    return true;
}

// log(xi' M^n eta) with per-step sup-norm renormalization; safe for n up to
// 10^6 where M^n itself would overflow at once. The log-scale is accumulated
// with compensated summation so a million tiny increments do not drift.
inline double log_weight_of_power(const Vec& xi, const Matrix& m, std::size_t n, const Vec& eta) {
    Vec s = xi;
    CompensatedSum log_scale;
    for (std::size_t step = 0; step < n; ++step) {
        s = left_mul(s, m);
        const double norm = sup_norm(s);
        if (norm == 0.0) return neg_inf;
        for (double& x : s) x /= norm;
        log_scale.add(std::log(norm));
    }
    const double w = dot(s, eta);
    if (w == 0.0) return neg_inf;
    log_scale.add(std::log(w));
    return log_scale.value();
}

} // namespace detail

// Parses the JSON model document. Fields: m (positive integer), xi, eta
// (arrays of m non-negative numbers), A, B (m x m row arrays). Duplicate
// keys, missing fields, unknown fields, negative or non-finite entries and
// all-zero xi/eta/A/B are reported as ParseError with the offending location.
inline LinearRepresentation parse_model(const std::string& text) {
    using nlohmann::json;

    std::vector<std::set<std::string>> scopes;
    json::parser_callback_t dup_check = [&scopes](int, json::parse_event_t event, json& parsed) {
        if (event == json::parse_event_t::object_start) {
            scopes.emplace_back();
        } else if (event == json::parse_event_t::object_end) {
            scopes.pop_back();
        } else if (event == json::parse_event_t::key) {
            const auto key = parsed.get<std::string>();
            if (!scopes.back().insert(key).second)
                throw ParseError("duplicate key \"" + key + "\"");
        }
        return true;
    };

    json doc;
    try {
        doc = json::parse(text, dup_check);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("model file must be a JSON object");

    static const std::set<std::string> known = {"m", "xi", "A", "B", "eta"};
    for (const auto& item : doc.items())
        if (known.count(item.key()) == 0)
            throw ParseError("unknown field \"" + item.key() + "\"");
    for (const auto& name : known)
        if (!doc.contains(name))
            throw ParseError("missing field \"" + name + "\"");

    if (!doc["m"].is_number_integer() || doc["m"].get<long long>() <= 0)
        throw ParseError("\"m\" must be a positive integer");
    const auto m = doc["m"].get<std::size_t>();

    LinearRepresentation rep;
    rep.dimension = m;
    rep.xi = detail::parse_weight_vector(doc, "xi", m);
    rep.eta = detail::parse_weight_vector(doc, "eta", m);
    rep.matrix_a = detail::parse_weight_matrix(doc, "A", m);
    rep.matrix_b = detail::parse_weight_matrix(doc, "B", m);

    if (detail::all_zero(rep.xi)) throw ParseError("xi is the zero vector");
    if (detail::all_zero(rep.eta)) throw ParseError("eta is the zero vector");
    if (rep.matrix_a.is_zero()) throw ParseError("A is the zero matrix");
    if (rep.matrix_b.is_zero()) throw ParseError("B is the zero matrix");
    return rep;
}

// (xi, A e^t, B, eta): the exponential change of measure that shifts the
// drift from beta(0) to beta(t).
inline LinearRepresentation tilt(const LinearRepresentation& rep, double t,
                                 double max_abs_t = default_tilt_bound) {
    if (!(std::abs(t) <= max_abs_t))
        throw DomainError("tilt parameter t = " + std::to_string(t) +
                          " exceeds the configured bound |t| <= " + std::to_string(max_abs_t));
    LinearRepresentation out = rep;
    out.matrix_a = scaled(rep.matrix_a, std::exp(t));
    return out;
}

// xi' M_{w_1} ... M_{w_n} eta. Plain double arithmetic; intended for short
// words (the enumeration oracle), not for n where lambda^n overflows.
inline double weight_of_word(const LinearRepresentation& rep, std::string_view word) {
    Vec s = rep.xi;
    for (char symbol : word) {
        if (symbol == 'a')
            s = left_mul(s, rep.matrix_a);
        else if (symbol == 'b')
            s = left_mul(s, rep.matrix_b);
        else
            throw DomainError(std::string("word contains symbol '") + symbol +
                              "'; alphabet is {a,b}");
    }
    return dot(s, rep.eta);
}

// log(xi' (A+B)^n eta), the normalizing constant of the length-n measure.
inline double total_weight(const LinearRepresentation& rep, std::size_t n) {
    return detail::log_weight_of_power(rep.xi, rep.matrix_a + rep.matrix_b, n, rep.eta);
}

} // namespace patrate
