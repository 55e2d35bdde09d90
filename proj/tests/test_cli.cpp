#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "artin/cli.hpp"
#include "artin/reference_tables.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

// In-process run of the same entry point the binary uses.
Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "artin");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = artin::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) rows.push_back(artin::cli::detail::split_csv_line(line));
    return rows;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("artin_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

}  // namespace

TEST(CliZeros, CsvMatchesTabulatedOrdinates) {
    const auto result = run({"zeros", "--count", "10", "--format", "csv"});
    ASSERT_EQ(result.code, 0) << result.err;
    const auto rows = parse_csv(result.out);
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "u", "residual"}));
    for (int k = 1; k <= 10; ++k) {
        EXPECT_EQ(rows[k][0], std::to_string(k));
        EXPECT_NEAR(std::stod(rows[k][1]), artin::reference::exact_spectrum[k - 1].u.value, 5e-5);
    }
    EXPECT_EQ(result.out.find('\r'), std::string::npos);
}

TEST(CliResonances, BothMethodsFirstRow) {
    const auto result = run({"resonances", "--method", "both", "--count", "10"});
    ASSERT_EQ(result.code, 0) << result.err;
    const auto rows = parse_csv(result.out);
    ASSERT_EQ(rows.size(), 11u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "u", "E", "Gamma", "E_approx", "Gamma_approx",
                                                 "delta_offset"}));
    EXPECT_EQ(rows[1][1], "14.1347");
    EXPECT_EQ(rows[1][2], "50.1351");
    EXPECT_EQ(rows[1][3], "3.53368");
    EXPECT_EQ(rows[1][4], "51.2732");
    EXPECT_EQ(rows[1][5], "3.05908");
}

TEST(CliResonances, ExactOnlySchema) {
    const auto result = run({"resonances", "--count", "2"});
    ASSERT_EQ(result.code, 0);
    EXPECT_EQ(parse_csv(result.out)[0], (std::vector<std::string>{"n", "u", "E", "Gamma"}));
}

TEST(CliJson, RoundTripIsBitExact) {
    artin::cli::RunConfig config;
    config.command = artin::cli::Command::resonances;
    config.method = artin::cli::MethodChoice::both;
    config.count = 5;
    const auto table = artin::cli::resonances_table(config);
    const auto doc = nlohmann::ordered_json::parse(artin::to_json(table));
    EXPECT_EQ(doc["command"], "resonances");
    EXPECT_EQ(doc["params"]["method"], "both");
    ASSERT_EQ(doc["rows"].size(), table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (const auto& [name, cell] : table.rows[r].cells) {
            if (const double* v = std::get_if<double>(&cell)) {
                EXPECT_EQ(doc["rows"][r][name].get<double>(), *v) << name;
            } else {
                EXPECT_EQ(doc["rows"][r][name].get<std::int64_t>(), std::get<std::int64_t>(cell));
            }
        }
    }
}

TEST(CliJson, PhaseAndWaveRoundTrip) {
    for (auto args : {std::vector<std::string>{"phase", "--e-min", "40", "--e-max", "60", "--samples", "30",
                                               "--format", "json"},
                      std::vector<std::string>{"wave", "--nx", "4", "--ny", "3", "--format", "json"}}) {
        const auto result = run(args);
        ASSERT_EQ(result.code, 0) << result.err;
        const auto doc = nlohmann::ordered_json::parse(result.out);
        // Re-serializing the parsed document reproduces it byte for byte.
        EXPECT_EQ(doc.dump(2) + "\n", result.out);
        EXPECT_FALSE(doc["rows"].empty());
    }
}

TEST(CliOutput, RepeatedRunsAreByteIdentical) {
    TempDir dir;
    const auto a = (dir.path() / "a.csv").string();
    const auto b = (dir.path() / "b.csv").string();
    for (const auto& file : {a, b}) {
        ASSERT_EQ(run({"phase", "--samples", "300", "--output", file}).code, 0);
    }
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_FALSE(slurp(a).empty());
}

TEST(CliOutput, CsvHeadersPerCommand) {
    EXPECT_EQ(parse_csv(run({"phase", "--samples", "5"}).out)[0],
              (std::vector<std::string>{"E", "p", "delta", "re_S", "im_S"}));
    const auto wave = run({"wave", "--nx", "3", "--ny", "2"});
    const auto rows = parse_csv(wave.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "y_tilde", "re_psi", "im_psi", "modes_used"}));
    EXPECT_EQ(rows.size(), 7u);
}

TEST(CliExitCodes, UsageErrorsAreTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"zeros", "--count", "0"}).code, 2);
    EXPECT_EQ(run({"zeros", "--count", "51"}).code, 2);
    EXPECT_EQ(run({"zeros", "--count", "ten"}).code, 2);
    EXPECT_EQ(run({"zeros", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"phase", "--e-min", "0.2"}).code, 2);
    EXPECT_EQ(run({"phase", "--e-min", "10", "--e-max", "5"}).code, 2);
    EXPECT_EQ(run({"phase", "--tol", "1e-6"}).code, 2);
    EXPECT_EQ(run({"wave", "--p", "-1"}).code, 2);
    EXPECT_EQ(run({"resonances", "--method", "guess"}).code, 2);
    const auto result = run({"zeros", "--count", "0"});
    EXPECT_TRUE(result.out.empty());
    EXPECT_NE(result.err.find("usage error"), std::string::npos);
    EXPECT_EQ(std::count(result.err.begin(), result.err.end(), '\n'), 1);
}

TEST(CliExitCodes, ComputationErrorIsOne) {
    // The output path names a directory, so the write fails after computing.
    TempDir dir;
    const auto result = run({"zeros", "--count", "2", "--output", dir.path().string()});
    EXPECT_EQ(result.code, 1);
    EXPECT_NE(result.err.find("artin: error:"), std::string::npos);
}

TEST(CliExitCodes, HelpIsZero) {
    const auto result = run({"--help"});
    EXPECT_EQ(result.code, 0);
    EXPECT_NE(result.out.find("resonances"), std::string::npos);
}

TEST(CliVerify, AllSuitesPass) {
    const auto result = run({"verify"});
    EXPECT_EQ(result.code, 0) << result.out;
    EXPECT_NE(result.out.find(" 0 failed"), std::string::npos);
    EXPECT_EQ(result.out.find("FAIL"), std::string::npos);
}

TEST(CliPlot, ScriptsReferenceDataRelatively) {
    TempDir dir;
    const auto data_dir = dir.path() / "data";
    const auto script_dir = dir.path() / "scripts";
    fs::create_directories(data_dir);
    fs::create_directories(script_dir);
    const auto phase = (data_dir / "phase.csv").string();
    const auto res = (data_dir / "res.csv").string();
    const auto wave = (data_dir / "wave.csv").string();
    ASSERT_EQ(run({"phase", "--output", phase}).code, 0);
    ASSERT_EQ(run({"resonances", "--method", "both", "--output", res}).code, 0);
    ASSERT_EQ(run({"wave", "--nx", "5", "--ny", "5", "--output", wave}).code, 0);

    const auto script = (script_dir / "phase.gp").string();
    ASSERT_EQ(run({"plot", "--data", phase, "--kind", "phase", "--output", script}).code, 0);
    const auto text = slurp(script);
    EXPECT_NE(text.find("\"../data/phase.csv\""), std::string::npos) << text;
    EXPECT_NE(text.find("using 1:3"), std::string::npos);
    // One marker per approximate resonance below 700.
    std::size_t markers = 0;
    for (auto pos = text.find("set arrow"); pos != std::string::npos; pos = text.find("set arrow", pos + 1)) {
        ++markers;
    }
    EXPECT_EQ(markers, 10u);
    EXPECT_NE(text.find("51.2732"), std::string::npos);

    const auto poles = run({"plot", "--data", res, "--kind", "resonances"});
    ASSERT_EQ(poles.code, 0);
    EXPECT_NE(poles.out.find("using 3:(-$4)"), std::string::npos);
    EXPECT_NE(poles.out.find("using 5:(-$6)"), std::string::npos);

    const auto heat = run({"plot", "--data", wave, "--kind", "wave"});
    ASSERT_EQ(heat.code, 0);
    EXPECT_NE(heat.out.find("with image"), std::string::npos);
}

TEST(CliPlot, SchemaMismatchIsAnError) {
    TempDir dir;
    const auto zeros = (dir.path() / "zeros.csv").string();
    ASSERT_EQ(run({"zeros", "--count", "3", "--output", zeros}).code, 0);
    for (const char* kind : {"phase", "wave", "resonances"}) {
        const auto result = run({"plot", "--data", zeros, "--kind", kind});
        EXPECT_EQ(result.code, 1) << kind;
        EXPECT_NE(result.err.find("needs columns"), std::string::npos);
    }
    const auto json = (dir.path() / "zeros.json").string();
    ASSERT_EQ(run({"zeros", "--count", "3", "--format", "json", "--output", json}).code, 0);
    EXPECT_EQ(run({"plot", "--data", json, "--kind", "phase"}).code, 1);
    EXPECT_EQ(run({"plot", "--data", (dir.path() / "missing.csv").string()}).code, 1);
    EXPECT_EQ(run({"plot", "--kind", "phase"}).code, 2);
    EXPECT_THROW(artin::cli::emit_plot_script(zeros, artin::cli::PlotKind::wave), artin::cli::SchemaError);
}

#ifdef ARTIN_CLI_PATH
// The installed binary itself, through the shell.
TEST(CliBinary, ExitCodesAndOutput) {
    const std::string bin = ARTIN_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("zeros --count 3"), 0);
    EXPECT_EQ(status("zeros --count 0"), 2);
    EXPECT_EQ(status("plot --data /nonexistent.csv"), 1);

    std::array<char, 256> buffer{};
    std::string out;
    FILE* pipe = popen((bin + " zeros --count 1").c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    while (fgets(buffer.data(), buffer.size(), pipe)) out += buffer.data();
    EXPECT_EQ(pclose(pipe), 0);
    EXPECT_EQ(out.substr(0, 17), "n,u,residual\n1,14");
}
#endif
