#pragma once

// Command-line front end: argument parsing into a RunConfig, command execution
// into CSV/JSON tables, and gnuplot script emission for saved data files.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "artin/error.hpp"
#include "artin/maass.hpp"
#include "artin/scattering.hpp"
#include "artin/table.hpp"
#include "artin/verify.hpp"
#include "artin/zeros.hpp"

namespace artin::cli {

// Bad flags or flag combinations; exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Data file does not carry the columns a plot kind needs; exit code 1.
class SchemaError : public Error {
public:
    using Error::Error;
};

enum class Command { zeros, resonances, phase, wave, verify, plot };
enum class Format { csv, json };
enum class MethodChoice { exact, approx, both };
enum class PlotKind { phase, wave, resonances };

inline const char* to_string(Command c) {
    switch (c) {
        case Command::zeros: return "zeros";
        case Command::resonances: return "resonances";
        case Command::phase: return "phase";
        case Command::wave: return "wave";
        case Command::verify: return "verify";
        case Command::plot: return "plot";
    }
    return "?";
}

inline const char* to_string(MethodChoice m) {
    return m == MethodChoice::exact ? "exact" : m == MethodChoice::approx ? "approx" : "both";
}

inline const char* to_string(PlotKind k) {
    return k == PlotKind::phase ? "phase" : k == PlotKind::wave ? "wave" : "resonances";
}

struct RunConfig {
    Command command = Command::verify;
    Format format = Format::csv;
    std::string output_path;  // empty: standard output
    std::optional<double> tolerance;

    // zeros, resonances
    int count = 10;
    MethodChoice method = MethodChoice::exact;
    int newton_steps = 0;

    // phase
    double e_min = 1.0;
    double e_max = 700.0;
    int samples = 2000;

    // wave
    double momentum = 7.06735;
    double x_min = -0.5;
    double x_max = 0.5;
    int nx = 41;
    double y_tilde_min = -0.14;
    double y_tilde_max = 2.0;
    int ny = 41;

    // plot
    std::string data_path;
    PlotKind plot_kind = PlotKind::phase;

    void validate() const {
        auto require = [](bool ok, const std::string& message) {
            if (!ok) throw UsageError(message);
        };
        if (tolerance) {
            require(std::isfinite(*tolerance) && *tolerance > 0.0 && *tolerance < 1.0,
                    "--tol must lie in (0, 1)");
            require(command == Command::zeros || command == Command::resonances ||
                        command == Command::wave,
                    std::string("--tol is not used by '") + to_string(command) + "'");
        }
        switch (command) {
            case Command::zeros:
            case Command::resonances:
                require(count >= 1 && count <= 50, "--count must be in [1, 50]");
                require(newton_steps >= 0 && newton_steps <= 50, "--newton-steps must be in [0, 50]");
                break;
            case Command::phase:
                require(std::isfinite(e_min) && std::isfinite(e_max), "energies must be finite");
                require(e_min > 0.25, "--e-min must exceed 1/4 (continuum threshold)");
                require(e_max > e_min, "--e-max must exceed --e-min");
                require(samples >= 2 && samples <= 1'000'000, "--samples must be in [2, 1000000]");
                break;
            case Command::wave:
                require(std::isfinite(momentum) && momentum > 0.0, "--p must be finite and > 0");
                require(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_tilde_min) &&
                            std::isfinite(y_tilde_max),
                        "grid bounds must be finite");
                require(nx >= 1 && nx <= 2000 && ny >= 1 && ny <= 2000, "--nx and --ny must be in [1, 2000]");
                require(x_max > x_min || (nx == 1 && x_max == x_min), "need --x-max > --x-min");
                require(y_tilde_max > y_tilde_min || (ny == 1 && y_tilde_max == y_tilde_min),
                        "need --yt-max > --yt-min");
                require(y_tilde_min >= -3.0, "--yt-min below -3 needs too many Fourier modes");
                break;
            case Command::verify:
                break;
            case Command::plot:
                require(!data_path.empty(), "plot needs --data");
                break;
        }
    }
};

namespace detail {

inline double grid_point(double lo, double hi, int count, int i) {
    if (count == 1) return lo;
    return i == count - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
}

inline std::vector<ZetaZero> zeros_for(const RunConfig& config) {
    ZeroSearchOptions options;
    if (config.tolerance) options.tolerance = *config.tolerance;
    return first_n_zeros(config.count, options);
}

}  // namespace detail

inline Table zeros_table(const RunConfig& config) {
    Table table{"zeros", {}, schema::zeros, {}};
    table.params["count"] = config.count;
    if (config.tolerance) table.params["tol"] = *config.tolerance;
    for (const auto& zero : detail::zeros_for(config)) {
        table.append(TableRow{}
                         .add("n", std::int64_t{zero.index})
                         .add("u", zero.u)
                         .add("residual", zero.residual));
    }
    return table;
}

// exact: n,u,E,Gamma. approx and both add E_approx,Gamma_approx,delta_offset;
// the exact columns are cheap and always present.
inline Table resonances_table(const RunConfig& config) {
    const bool with_approx = config.method != MethodChoice::exact;
    Table table{"resonances", {}, with_approx ? schema::resonances_with_approx : schema::resonances, {}};
    table.params["count"] = config.count;
    table.params["method"] = to_string(config.method);
    table.params["newton_steps"] = config.newton_steps;
    if (config.tolerance) table.params["tol"] = *config.tolerance;

    const auto zeros = detail::zeros_for(config);
    const auto exact = exact_resonances(zeros);
    std::vector<Resonance> approx;
    if (with_approx) approx = approx_resonances(zeros, ApproxOptions{config.newton_steps});
    for (std::size_t k = 0; k < exact.size(); ++k) {
        TableRow row;
        row.add("n", std::int64_t{exact[k].index})
            .add("u", exact[k].u)
            .add("E", exact[k].energy)
            .add("Gamma", exact[k].width);
        if (with_approx) {
            row.add("E_approx", approx[k].energy)
                .add("Gamma_approx", approx[k].width)
                .add("delta_offset", approx[k].phase_offset.value_or(0.0));
        }
        table.append(std::move(row));
    }
    return table;
}

inline Table phase_table(const RunConfig& config) {
    Table table{"phase", {}, schema::phase, {}};
    table.params["e_min"] = config.e_min;
    table.params["e_max"] = config.e_max;
    table.params["samples"] = config.samples;
    for (const auto& sample : phase_scan(config.e_min, config.e_max, config.samples)) {
        table.append(TableRow{}
                         .add("E", sample.energy)
                         .add("p", sample.momentum)
                         .add("delta", sample.delta)
                         .add("re_S", sample.s_value.real())
                         .add("im_S", sample.s_value.imag()));
    }
    return table;
}

// Rows run over x fastest, one block per y_tilde.
inline Table wave_table(const RunConfig& config) {
    Table table{"wave", {}, schema::wave, {}};
    table.params["p"] = config.momentum;
    table.params["x_min"] = config.x_min;
    table.params["x_max"] = config.x_max;
    table.params["nx"] = config.nx;
    table.params["yt_min"] = config.y_tilde_min;
    table.params["yt_max"] = config.y_tilde_max;
    table.params["ny"] = config.ny;
    TruncationSpec trunc;
    if (config.tolerance) {
        trunc.tail_tol = *config.tolerance;
        table.params["tol"] = *config.tolerance;
    }
    const EisensteinWave wave(config.momentum);
    for (int j = 0; j < config.ny; ++j) {
        const double yt = detail::grid_point(config.y_tilde_min, config.y_tilde_max, config.ny, j);
        for (int i = 0; i < config.nx; ++i) {
            const double x = detail::grid_point(config.x_min, config.x_max, config.nx, i);
            const auto sample = wave({x, yt}, trunc);
            table.append(TableRow{}
                             .add("x", x)
                             .add("y_tilde", yt)
                             .add("re_psi", sample.psi.real())
                             .add("im_psi", sample.psi.imag())
                             .add("modes_used", std::int64_t{sample.modes_used}));
        }
    }
    return table;
}

inline std::string render(const Table& table, Format format) {
    return format == Format::csv ? to_csv(table) : to_json(table);
}

inline std::string verify_report(const std::vector<verify::Check>& checks, Format format) {
    const auto passed = std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    const auto failed = static_cast<long>(checks.size()) - passed;
    if (format == Format::json) {
        nlohmann::ordered_json doc;
        doc["command"] = "verify";
        doc["params"] = nlohmann::ordered_json::object();
        auto rows = nlohmann::ordered_json::array();
        auto bound = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(); };
        for (const auto& c : checks) {
            nlohmann::ordered_json row;
            row["suite"] = c.suite;
            row["check"] = c.name;
            row["value"] = bound(c.value);
            row["lo"] = bound(c.lo);
            row["hi"] = bound(c.hi);
            row["passed"] = c.passed;
            if (!c.detail.empty()) row["detail"] = c.detail;
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        doc["passed"] = passed;
        doc["failed"] = failed;
        return doc.dump(2) + "\n";
    }
    std::string out;
    for (const auto& c : checks) out += verify::format(c) + "\n";
    out += "verify: " + std::to_string(passed) + " passed, " + std::to_string(failed) + " failed\n";
    return out;
}

// ---- plot scripts ------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) fields.push_back(field);
    return fields;
}

struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline CsvData read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SchemaError("plot: cannot read data file '" + path + "'");
    }
    CsvData data;
    std::string line;
    if (!std::getline(in, line) || line.empty() || line.front() == '{') {
        throw SchemaError("plot: '" + path + "' is not a CSV table with a header row");
    }
    data.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != data.header.size()) {
            throw SchemaError("plot: ragged row in '" + path + "'");
        }
        std::vector<double> values;
        for (const auto& field : fields) {
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            if (end == field.c_str() || *end != '\0') {
                throw SchemaError("plot: non-numeric field '" + field + "' in '" + path + "'");
            }
            values.push_back(v);
        }
        data.rows.push_back(std::move(values));
    }
    return data;
}

inline std::string join(const std::vector<std::string>& columns) {
    std::string out;
    for (std::size_t k = 0; k < columns.size(); ++k) out += (k ? "," : "") + columns[k];
    return out;
}

inline std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6g", v);
    return buffer;
}

// Approximate resonance energies inside [e_lo, e_hi].
inline std::vector<double> resonance_markers(double e_lo, double e_hi) {
    // Ordinates up to 2 sqrt(E) cover bump energies up to E; one spare zero
    // absorbs the count estimate's +-1 slack.
    const double height = 2.0 * std::sqrt(std::max(e_hi, 0.0) + 50.0);
    const int count = std::clamp(zero_count_estimate(height) + 1, 0, 50);
    std::vector<double> markers;
    if (count == 0) return markers;
    for (const auto& r : approx_resonances(default_zero_cache().first(count))) {
        if (r.energy >= e_lo && r.energy <= e_hi) markers.push_back(r.energy);
    }
    return markers;
}

}  // namespace detail

// Script text for a CSV data file. The data file is referenced relative to
// script_dir, the directory the script will be saved in.
inline std::string emit_plot_script(const std::string& data_path, PlotKind kind,
                                    const std::filesystem::path& script_dir = ".") {
    namespace fs = std::filesystem;
    const auto data = detail::read_csv(data_path);

    std::vector<std::string> expected;
    switch (kind) {
        case PlotKind::phase: expected = schema::phase; break;
        case PlotKind::wave: expected = schema::wave; break;
        case PlotKind::resonances:
            expected = data.header == schema::resonances_with_approx ? schema::resonances_with_approx
                                                                     : schema::resonances;
            break;
    }
    if (data.header != expected) {
        throw SchemaError(std::string("plot: ") + to_string(kind) + " needs columns " +
                          detail::join(expected) + ", found " + detail::join(data.header));
    }
    if (data.rows.empty()) {
        throw SchemaError("plot: '" + data_path + "' has no rows");
    }

    const fs::path relative = fs::absolute(data_path).lexically_normal().lexically_relative(
        fs::absolute(script_dir).lexically_normal());
    const std::string file = relative.generic_string();
    const std::string image = fs::path(data_path).stem().string() + ".png";

    std::string s;
    s += "# gnuplot script; run from the directory containing it\n";
    s += "set terminal pngcairo size 1000,640\n";
    s += "set output \"" + image + "\"\n";
    s += "set datafile separator \",\"\n";
    s += "set key autotitle columnhead\n";
    s += "set grid\n";

    switch (kind) {
        case PlotKind::phase: {
            double e_lo = INFINITY, e_hi = -INFINITY;
            for (const auto& row : data.rows) {
                e_lo = std::min(e_lo, row[0]);
                e_hi = std::max(e_hi, row[0]);
            }
            s += "set title \"Scattering phase\"\n";
            s += "set xlabel \"E\"\nset ylabel \"delta(E)\"\nset key off\n";
            for (double e : detail::resonance_markers(e_lo, e_hi)) {
                s += "set arrow from " + detail::fmt(e) + ", graph 0 to " + detail::fmt(e) +
                     ", graph 1 nohead dashtype 2 linecolor rgb \"gray50\"\n";
            }
            s += "plot \"" + file + "\" using 1:3 with lines linewidth 1.5\n";
            break;
        }
        case PlotKind::resonances:
            s += "set title \"Resonance poles in the complex energy plane\"\n";
            s += "set xlabel \"Re E\"\nset ylabel \"Im E\"\nset key bottom left\n";
            s += "plot \"" + file + "\" using 3:(-$4) with points pointtype 7 title \"exact\"";
            if (expected == schema::resonances_with_approx) {
                s += ", \\\n     \"" + file + "\" using 5:(-$6) with points pointtype 6 title \"approximate\"";
            }
            s += "\n";
            break;
        case PlotKind::wave:
            s += "set title \"|psi(x, y)|\"\n";
            s += "set xlabel \"x\"\nset ylabel \"ln y\"\nset cblabel \"|psi|\"\nset key off\n";
            s += "set palette rgbformulae 33,13,10\n";
            s += "plot \"" + file + "\" using 1:2:(sqrt($3**2 + $4**2)) with image\n";
            break;
    }
    return s;
}

// ---- driver ------------------------------------------------------------------

// Parses argv; a UsageError carries the diagnostic. Returns nullopt when help
// was requested and printed.
inline std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& out) {
    RunConfig config;
    CLI::App app{"Scattering data of the modular billiard: zeta zeros, resonances, phase, wave function"};
    app.require_subcommand(1);
    app.fallthrough();

    double tol = 0.0;
    std::string format = "csv";
    app.add_option("--tol", tol, "Tolerance override (zeros/resonances: zero ordinate; wave: Fourier tail)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", config.output_path, "Output file (default: standard output)");

    auto* zeros = app.add_subcommand("zeros", "First N zeta zeros on the critical line");
    zeros->add_option("--count", config.count, "Number of zeros")->capture_default_str();

    auto* res = app.add_subcommand("resonances", "Resonance energies and widths");
    std::string method = "exact";
    res->add_option("--method", method, "exact, approx or both")
        ->check(CLI::IsMember({"exact", "approx", "both"}))
        ->capture_default_str();
    res->add_option("--count", config.count, "Number of resonances")->capture_default_str();
    res->add_option("--newton-steps", config.newton_steps, "Extra Newton steps for approx poles")
        ->capture_default_str();

    auto* phase = app.add_subcommand("phase", "Unwrapped scattering phase on an energy grid");
    phase->add_option("--e-min", config.e_min, "Lowest energy")->capture_default_str();
    phase->add_option("--e-max", config.e_max, "Highest energy")->capture_default_str();
    phase->add_option("--samples", config.samples, "Base grid size before refinement")->capture_default_str();

    auto* wave = app.add_subcommand("wave", "Wave function on an (x, ln y) grid");
    wave->add_option("--p", config.momentum, "Momentum p > 0")->capture_default_str();
    wave->add_option("--x-min", config.x_min)->capture_default_str();
    wave->add_option("--x-max", config.x_max)->capture_default_str();
    wave->add_option("--nx", config.nx)->capture_default_str();
    wave->add_option("--yt-min", config.y_tilde_min, "Lowest ln y")->capture_default_str();
    wave->add_option("--yt-max", config.y_tilde_max, "Highest ln y")->capture_default_str();
    wave->add_option("--ny", config.ny)->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run the self-check suites");

    auto* plot = app.add_subcommand("plot", "Write a gnuplot script for a CSV data file");
    std::string kind = "phase";
    plot->add_option("--data", config.data_path, "CSV file written by phase, wave or resonances")->required();
    plot->add_option("--kind", kind, "phase, wave or resonances")
        ->check(CLI::IsMember({"phase", "wave", "resonances"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (app.count("--tol")) config.tolerance = tol;
    config.format = format == "json" ? Format::json : Format::csv;
    if (zeros->parsed()) config.command = Command::zeros;
    if (res->parsed()) config.command = Command::resonances;
    if (phase->parsed()) config.command = Command::phase;
    if (wave->parsed()) config.command = Command::wave;
    if (verify->parsed()) config.command = Command::verify;
    if (plot->parsed()) config.command = Command::plot;
    config.method = method == "approx" ? MethodChoice::approx
                    : method == "both" ? MethodChoice::both
                                       : MethodChoice::exact;
    config.plot_kind = kind == "wave" ? PlotKind::wave
                       : kind == "resonances" ? PlotKind::resonances
                                              : PlotKind::phase;
    config.validate();
    return config;
}

inline void write_output(const RunConfig& config, const std::string& text, std::ostream& out) {
    if (config.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text) || !file.flush()) {
        throw Error("cannot write '" + config.output_path + "'");
    }
}

// Executes a validated config. Returns the exit code; computation failures
// propagate as artin::Error.
inline int execute(const RunConfig& config, std::ostream& out) {
    config.validate();
    switch (config.command) {
        case Command::zeros: write_output(config, render(zeros_table(config), config.format), out); return 0;
        case Command::resonances:
            write_output(config, render(resonances_table(config), config.format), out);
            return 0;
        case Command::phase: write_output(config, render(phase_table(config), config.format), out); return 0;
        case Command::wave: write_output(config, render(wave_table(config), config.format), out); return 0;
        case Command::verify: {
            const auto checks = verify::run_all();
            write_output(config, verify_report(checks, config.format), out);
            return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; }) ? 0 : 1;
        }
        case Command::plot: {
            const std::filesystem::path script_dir =
                config.output_path.empty() ? std::filesystem::path(".")
                                           : std::filesystem::absolute(config.output_path).parent_path();
            write_output(config, emit_plot_script(config.data_path, config.plot_kind, script_dir), out);
            return 0;
        }
    }
    return 1;
}

// Full CLI: 0 success, 1 computation failure, 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    std::optional<RunConfig> config;
    try {
        config = parse(argc, argv, out);
    } catch (const UsageError& e) {
        err << "artin: usage error: " << e.what() << "\n";
        return 2;
    }
    if (!config) return 0;
    try {
        return execute(*config, out);
    } catch (const Error& e) {
        err << "artin: error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace artin::cli
