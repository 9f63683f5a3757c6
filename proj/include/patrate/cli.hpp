// Command-line front end. Commands: validate | analyze | rate-curve |
// distribution | verify-ldp | sample. Output is CSV (header row, 17
// significant digits, LF endings) or, with --json, the same fields as a JSON
// document. Exit codes: 0 success, 1 usage/parse error, 2 model-validation
// failure, 3 numerical failure, 4 out-of-domain request.

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "errors.hpp"
#include "exactdist.hpp"
#include "model.hpp"
#include "ratefn.hpp"
#include "sampler.hpp"
#include "spectral.hpp"
#include "validate.hpp"

namespace patrate {

struct RunConfig {
    std::string command;
    std::string model_path;
    bool grid_set = false;
    double grid_min = 0.0;
    double grid_max = 0.0;
    std::size_t grid_points = 0;
    std::vector<std::size_t> n_list;
    std::vector<double> t_list;
    double x = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t seed = 0;
    std::size_t num_samples = 1;
    bool json_output = false;
    bool dump_words = false;
    std::string out_path; // empty = stdout
};

namespace cli_detail {

using ordered_json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_cell(const ordered_json& v) {
    if (v.is_null()) return "NA";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_string()) return csv_escape(v.get<std::string>());
    return csv_escape(v.dump());
}

inline void emit_table(const RunConfig& cfg, std::ostream& os, const std::string& command,
                       const std::vector<std::string>& columns,
                       const std::vector<ordered_json>& rows) {
    if (cfg.json_output) {
        ordered_json doc;
        doc["command"] = command;
        doc["rows"] = rows;
        os << doc.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) os << ',';
            os << (row.contains(columns[i]) ? csv_cell(row[columns[i]]) : "NA");
        }
        os << '\n';
    }
}

// Scalar summaries (validate, analyze): CSV as field,value rows with arrays
// flattened to field_0, field_1, ...; JSON as the object itself.
inline void emit_summary(const RunConfig& cfg, std::ostream& os, const std::string& command,
                         const ordered_json& summary) {
    if (cfg.json_output) {
        ordered_json doc;
        doc["command"] = command;
        for (const auto& item : summary.items()) doc[item.key()] = item.value();
        os << doc.dump(2) << '\n';
        return;
    }
    os << "field,value\n";
    for (const auto& item : summary.items()) {
        if (item.value().is_array()) {
            std::size_t i = 0;
            for (const auto& elem : item.value())
                os << item.key() << '_' << i++ << ',' << csv_cell(elem) << '\n';
        } else {
            os << item.key() << ',' << csv_cell(item.value()) << '\n';
        }
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_output(const std::string& content, const std::string& out_path,
                         std::ostream& fallback) {
    if (out_path.empty()) {
        fallback << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + out_path);
    out << content;
    if (!out) throw IoError("failed writing output file: " + out_path);
}

struct LoadedModel {
    LinearRepresentation rep;
    ValidationReport report;
};

inline LoadedModel load_model(const std::string& path, bool need_primitive) {
    LoadedModel loaded;
    loaded.rep = parse_model(read_file(path));
    loaded.report = validate(loaded.rep);
    if (!loaded.report.support_ok || (need_primitive && !loaded.report.primitive)) {
        std::string msg = "model rejected";
        for (const auto& m : loaded.report.messages) msg += "; " + m;
        throw ModelError(msg);
    }
    return loaded;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + " from \"" + s + "\"");
    }
}

inline std::uint64_t parse_unsigned(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size() || (!s.empty() && s[0] == '-')) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse " + what + " from \"" + s + "\"");
    }
}

inline void parse_grid_spec(const std::string& spec, RunConfig& cfg) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3)
        throw std::invalid_argument("--grid expects MIN:MAX:POINTS, got \"" + spec + "\"");
    cfg.grid_min = parse_double(parts[0], "grid minimum");
    cfg.grid_max = parse_double(parts[1], "grid maximum");
    cfg.grid_points = static_cast<std::size_t>(parse_unsigned(parts[2], "grid point count"));
    if (!(cfg.grid_min < cfg.grid_max))
        throw std::invalid_argument("--grid requires MIN < MAX");
    if (cfg.grid_points < 2)
        throw std::invalid_argument("--grid requires at least 2 points");
    cfg.grid_set = true;
}

inline std::vector<std::size_t> parse_n_list(const std::string& spec) {
    std::vector<std::size_t> out;
    for (const auto& part : split(spec, ','))
        out.push_back(static_cast<std::size_t>(parse_unsigned(part, "word length n")));
    return out;
}

inline std::vector<double> parse_t_list(const std::string& spec) {
    std::vector<double> out;
    for (const auto& part : split(spec, ','))
        out.push_back(parse_double(part, "tilt parameter t"));
    return out;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t points) {
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    return out;
}

// --- command handlers ------------------------------------------------------

inline int cmd_validate(const RunConfig& cfg, std::ostream& os) {
    const auto rep = parse_model(read_file(cfg.model_path));
    const auto report = validate(rep);
    ordered_json summary;
    summary["primitive"] = report.primitive;
    summary["support_ok"] = report.support_ok;
    summary["lambda_a_positive"] = report.lambda_a_positive;
    summary["lambda_b_positive"] = report.lambda_b_positive;
    summary["messages"] = report.messages;
    emit_summary(cfg, os, "validate", summary);
    return report.accepted() ? 0 : 2;
}

inline int cmd_analyze(const RunConfig& cfg, std::ostream& os) {
    const auto loaded = load_model(cfg.model_path, true);
    const auto& rep = loaded.rep;

    if (!cfg.t_list.empty()) {
        std::vector<ordered_json> rows;
        for (double t : cfg.t_list) {
            const auto cp = curve_point(rep, t);
            ordered_json row;
            row["t"] = cp.t;
            row["y"] = cp.y;
            row["y_prime"] = cp.y_prime;
            row["beta"] = cp.beta;
            row["gamma"] = cp.gamma;
            rows.push_back(std::move(row));
        }
        emit_table(cfg, os, "analyze", {"t", "y", "y_prime", "beta", "gamma"}, rows);
        return 0;
    }

    const auto pd = perron(rep.matrix_a + rep.matrix_b);
    const auto cp = curve_point(rep, 0.0);
    const auto dom = domain(rep);
    ordered_json summary;
    summary["lambda"] = pd.lambda;
    summary["beta"] = cp.beta;
    summary["gamma"] = cp.gamma;
    summary["lambda_a"] = dom.lambda_a;
    summary["lambda_b"] = dom.lambda_b;
    summary["u_limit"] = dom.u_limit;
    summary["v_limit"] = dom.v_limit;
    summary["open01"] = dom.open01;
    summary["endpoint_left"] = dom.endpoint_left;
    summary["endpoint_right"] = dom.endpoint_right;
    summary["u"] = pd.u;
    summary["v"] = pd.v;
    emit_summary(cfg, os, "analyze", summary);
    return 0;
}

inline int cmd_rate_curve(const RunConfig& cfg, std::ostream& os) {
    const auto loaded = load_model(cfg.model_path, true);
    const auto& rep = loaded.rep;

    std::vector<double> grid;
    if (cfg.grid_set) {
        grid = linspace(cfg.grid_min, cfg.grid_max, cfg.grid_points);
    } else {
        // Default: 99 points strictly inside the domain, endpoints excluded.
        const auto dom = domain(rep);
        const double margin = 1e-6;
        grid = linspace(dom.u_limit + margin, dom.v_limit - margin, 99);
    }

    std::vector<ordered_json> rows;
    for (const auto& entry : rate_curve(rep, grid)) {
        ordered_json row;
        row["x"] = entry.x;
        if (entry.point) {
            row["tau"] = entry.point->tau;
            row["I"] = entry.point->rate;
            row["Iprime"] = entry.point->derivative;
            row["reason"] = "";
        } else {
            row["tau"] = nullptr;
            row["I"] = nullptr;
            row["Iprime"] = nullptr;
            row["reason"] = entry.reason;
        }
        rows.push_back(std::move(row));
    }
    emit_table(cfg, os, "rate-curve", {"x", "tau", "I", "Iprime", "reason"}, rows);
    return 0;
}

inline int cmd_distribution(const RunConfig& cfg, std::ostream& os) {
    const auto loaded = load_model(cfg.model_path, false);
    if (cfg.n_list.size() != 1)
        throw std::invalid_argument("distribution expects exactly one value for --n");
    const auto dist = exact_distribution(loaded.rep, cfg.n_list.front());

    std::vector<ordered_json> rows;
    for (std::size_t k = 0; k <= dist.n; ++k) {
        ordered_json row;
        row["k"] = k;
        row["log_weight"] = dist.log_weights[k];
        row["probability"] = dist.prob(k);
        rows.push_back(std::move(row));
    }
    emit_table(cfg, os, "distribution", {"k", "log_weight", "probability"}, rows);
    return 0;
}

inline int cmd_verify_ldp(const RunConfig& cfg, std::ostream& os) {
    const auto loaded = load_model(cfg.model_path, true);
    if (cfg.n_list.empty())
        throw std::invalid_argument("verify-ldp expects --n N[,N...]");
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        if (cfg.n_list[i] == 0)
            throw std::invalid_argument("verify-ldp requires n >= 1");
        if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1])
            throw std::invalid_argument("verify-ldp requires a strictly ascending n list");
    }

    const RatePoint rp = rate(loaded.rep, cfg.x);
    std::vector<ordered_json> rows;
    for (std::size_t n : cfg.n_list) {
        const double emp = empirical_rate(loaded.rep, n, cfg.x);
        ordered_json row;
        row["n"] = n;
        row["empirical_rate"] = emp;
        row["I"] = rp.rate;
        row["abs_error"] = std::abs(emp - rp.rate);
        rows.push_back(std::move(row));
    }
    emit_table(cfg, os, "verify-ldp", {"n", "empirical_rate", "I", "abs_error"}, rows);
    return 0;
}

inline int cmd_sample(const RunConfig& cfg, std::ostream& os) {
    const auto loaded = load_model(cfg.model_path, false);
    if (cfg.n_list.size() != 1)
        throw std::invalid_argument("sample expects exactly one value for --n");
    const std::size_t n = cfg.n_list.front();

    if (cfg.dump_words) {
        const SampleTable table(loaded.rep, n);
        std::vector<ordered_json> rows;
        for (std::size_t i = 0; i < cfg.num_samples; ++i) {
            PhiloxStream rng(cfg.seed, i);
            std::string word;
            word.reserve(n);
            detail::sample_one(table, rng, &word);
            ordered_json row;
            row["sample"] = i;
            row["word"] = word;
            rows.push_back(std::move(row));
        }
        emit_table(cfg, os, "sample", {"sample", "word"}, rows);
        return 0;
    }

    const auto summary = sample_counts(loaded.rep, n, cfg.num_samples, cfg.seed);
    std::vector<ordered_json> rows;
    for (std::size_t k = 0; k <= n; ++k) {
        ordered_json row;
        row["k"] = k;
        row["count"] = summary.counts[k];
        rows.push_back(std::move(row));
    }
    emit_table(cfg, os, "sample", {"k", "count"}, rows);
    return 0;
}

inline int dispatch(const RunConfig& cfg, std::ostream& os) {
    if (cfg.command == "validate") return cmd_validate(cfg, os);
    if (cfg.command == "analyze") return cmd_analyze(cfg, os);
    if (cfg.command == "rate-curve") return cmd_rate_curve(cfg, os);
    if (cfg.command == "distribution") return cmd_distribution(cfg, os);
    if (cfg.command == "verify-ldp") return cmd_verify_ldp(cfg, os);
    if (cfg.command == "sample") return cmd_sample(cfg, os);
    throw std::invalid_argument("unknown command: " + cfg.command);
}

} // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string grid_spec, n_spec, t_spec;

    CLI::App app{"pattern statistics of weighted finite automata over {a,b}", "patrate"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--model", cfg.model_path, "model file (JSON)")->required();
        sub->add_flag("--json", cfg.json_output, "emit JSON instead of CSV");
        sub->add_option("--out", cfg.out_path, "write output to this file instead of stdout");
    };

    auto* validate_cmd =
        app.add_subcommand("validate", "check primitivity, support and radius hypotheses");
    add_common(validate_cmd);

    auto* analyze_cmd =
        app.add_subcommand("analyze", "spectral summary; with --t, curve points at those tilts");
    add_common(analyze_cmd);
    analyze_cmd->add_option("--t", t_spec, "tilt values T[,T...] for spectral curve output");

    auto* curve_cmd = app.add_subcommand("rate-curve", "rate function I(x) on a grid");
    add_common(curve_cmd);
    curve_cmd->add_option("--grid", grid_spec, "grid as MIN:MAX:POINTS (default: 99 points inside the domain)");

    auto* dist_cmd = app.add_subcommand("distribution", "exact law of the symbol count Y_n");
    add_common(dist_cmd);
    dist_cmd->add_option("--n", n_spec, "word length")->required();

    auto* ldp_cmd =
        app.add_subcommand("verify-ldp", "empirical -(1/n) log tail versus the rate function");
    add_common(ldp_cmd);
    ldp_cmd->add_option("--x", cfg.x, "tail threshold per symbol")->required();
    ldp_cmd->add_option("--n", n_spec, "ascending word lengths N[,N...]")->required();

    auto* sample_cmd = app.add_subcommand("sample", "draw words under the model measure");
    add_common(sample_cmd);
    sample_cmd->add_option("--n", n_spec, "word length")->required();
    sample_cmd->add_option("--samples", cfg.num_samples, "number of words to draw");
    sample_cmd->add_option("--seed", cfg.seed, "64-bit generator seed");
    sample_cmd->add_flag("--words", cfg.dump_words, "dump sampled words instead of the histogram");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        if (!grid_spec.empty()) cli_detail::parse_grid_spec(grid_spec, cfg);
        if (!n_spec.empty()) cfg.n_list = cli_detail::parse_n_list(n_spec);
        if (!t_spec.empty()) cfg.t_list = cli_detail::parse_t_list(t_spec);

        std::ostringstream buffer;
        const int code = cli_detail::dispatch(cfg, buffer);
        cli_detail::write_output(buffer.str(), cfg.out_path, out);
        return code;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    }
}

} // namespace patrate
