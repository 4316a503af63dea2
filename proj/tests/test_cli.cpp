// End-to-end CLI tests. The binary path arrives in JCDRESS_CLI_PATH (set by
// the test harness); every case degrades to a no-op when it is missing so the
// test executable still runs standalone.

#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct CliResult {
    int exit_code{-1};
    std::string out;
};

const char* cli_path() { return std::getenv("JCDRESS_CLI_PATH"); }

// Runs through /bin/sh with stderr dropped; stdout is the machine channel.
CliResult run_cli(const std::string& invocation) {
    CliResult result;
    const std::string cmd = invocation + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return result;
    char buf[4096];
    size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

std::string quoted(const char* exe) { return std::string("\"") + exe + "\""; }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string field;
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

} // namespace

TEST_CASE("cli: resonant coefficient table matches the closed forms") {
    const char* exe = cli_path();
    if (!exe) return;

    const CliResult r = run_cli(quoted(exe) + " coeffs --resonant --k-max 3 --units g");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "k,C_k_minus,C_k_plus,precision_bits");

    const double expected[3] = {-1.0, 2.0 - std::sqrt(2.0),
                                -(3.0 - 3.0 * std::sqrt(2.0) + std::sqrt(3.0))};
    for (int k = 1; k <= 3; ++k) {
        const auto fields = fields_of(lines[static_cast<size_t>(k)]);
        REQUIRE(fields.size() == 4);
        CHECK(std::stoi(fields[0]) == k);
        CHECK(std::stod(fields[1]) == doctest::Approx(expected[k - 1]).epsilon(1e-12));
    }
}

TEST_CASE("cli: explicit zero detuning demands an approach side") {
    const char* exe = cli_path();
    if (!exe) return;

    CHECK(run_cli(quoted(exe) + " coeffs --delta 0 --k-max 2").exit_code == 2);

    const CliResult ok = run_cli(quoted(exe) + " coeffs --delta 0 --approach above --k-max 2");
    REQUIRE(ok.exit_code == 0);
    const auto lines = lines_of(ok.out);
    REQUIRE(lines.size() == 4); // header plus k = 0, 1, 2
    const auto fields = fields_of(lines[3]);
    CHECK(std::stod(fields[1]) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("cli: malformed invocations exit with the usage code") {
    const char* exe = cli_path();
    if (!exe) return;

    CHECK(run_cli(quoted(exe) + " coeffs --delta 0.5 --lambda 2 --k-max 2").exit_code == 2);
    CHECK(run_cli(quoted(exe) + " coeffs --bogus").exit_code == 2);
    CHECK(run_cli(quoted(exe)).exit_code == 2);             // no subcommand
    CHECK(run_cli(quoted(exe) + " sweep").exit_code == 2);  // no grid source
    CHECK(run_cli(quoted(exe) + " sweep --preset fig5 --config /nonexistent.cfg").exit_code == 2);
    CHECK(run_cli(quoted(exe) + " coeffs --scan exact --resonant").exit_code == 2);
}

TEST_CASE("cli: domain failures exit 1, distinct from usage errors") {
    const char* exe = cli_path();
    if (!exe) return;

    CHECK(run_cli(quoted(exe) + " coeffs --units g --g 0 --delta 1 --k-max 2").exit_code == 1);
}

TEST_CASE("cli: verify passes on a healthy parameter set") {
    const char* exe = cli_path();
    if (!exe) return;

    const CliResult text = run_cli(quoted(exe) + " verify --g 1 --delta 0.5 --n-max 20");
    CHECK(text.exit_code == 0);
    CHECK(text.out.find("pass: true") != std::string::npos);

    const CliResult json = run_cli(quoted(exe) + " verify --g 1 --delta 0.5 --n-max 10 --json");
    REQUIRE(json.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(json.out);
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("n_max").get<int>() == 10);
    CHECK(j.at("offdiag_residual").get<double>() <= j.at("offdiag_bound").get<double>());
}

TEST_CASE("cli: spectrum rows carry labels and tiny residuals") {
    const char* exe = cli_path();
    if (!exe) return;

    const CliResult r =
        run_cli(quoted(exe) + " spectrum --n-max 5 --method dense --g 0.8 --delta -0.3");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 12); // header plus 2 * 5 + 1 levels
    CHECK(lines[0] == "n,branch,e_oracle,e_closed,rel_err");
    for (size_t i = 1; i < lines.size(); ++i) {
        const auto fields = fields_of(lines[i]);
        REQUIRE(fields.size() == 5);
        const bool label_ok =
            fields[1] == "ground" || fields[1] == "minus" || fields[1] == "plus";
        CHECK(label_ok);
        CHECK(std::stod(fields[4]) < 1e-10);
    }
}

TEST_CASE("cli: decoupled twosite ground state is the photonic superfluid") {
    const char* exe = cli_path();
    if (!exe) return;

    const CliResult r = run_cli(quoted(exe) + " twosite --g 0 --hop-j 1");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.at("overlap_photonic_sf").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(j.at("variance").get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(j.at("amplitudes").size() == 8);

    const CliResult csv = run_cli(quoted(exe) + " twosite --g 0 --hop-j 1 --report csv");
    REQUIRE(csv.exit_code == 0);
    const auto lines = lines_of(csv.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].find("overlap_photonic_sf") != std::string::npos);
    CHECK(lines[0].find("amp_0") != std::string::npos);
}

TEST_CASE("cli: sweep output is byte-identical across worker counts") {
    const char* exe = cli_path();
    if (!exe) return;

    const auto cfg_path = std::filesystem::temp_directory_path() / "jcdress_cli_sweep.cfg";
    {
        std::ofstream cfg(cfg_path);
        cfg << "omega_c = 1000\n"
               "g = 1\n"
               "axis1.name = lambda\n"
               "axis1.min = 0.01\n"
               "axis1.max = 100\n"
               "axis1.count = 4\n"
               "axis2.name = hop_j_over_g\n"
               "axis2.min = 0.001\n"
               "axis2.max = 100\n"
               "axis2.count = 3\n"
               "outputs = var, ratio\n";
    }

    const std::string base = quoted(exe) + " sweep --config " + cfg_path.string();
    const CliResult one = run_cli(base + " --workers 1");
    const CliResult three = run_cli(base + " --workers 3");
    std::filesystem::remove(cfg_path);

    REQUIRE(one.exit_code == 0);
    REQUIRE(three.exit_code == 0);
    CHECK(one.out == three.out);
    const auto lines = lines_of(one.out);
    REQUIRE(lines.size() == 13); // header plus 4 * 3 grid points
    CHECK(lines[0] == "lambda,hop_j_over_g,var_n,effective_ratio,error");
}

TEST_CASE("cli: coefficient scans stream one row per k") {
    const char* exe = cli_path();
    if (!exe) return;

    const CliResult r = run_cli(quoted(exe) + " coeffs --scan dispersive --lambda 0.05 --k-max 10");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 11);
    CHECK(lines[0] == "k,c_k_minus,sign,precision_bits,error");

    const CliResult res = run_cli(quoted(exe) + " coeffs --scan resonant --k-max 5");
    REQUIRE(res.exit_code == 0);
    const auto rows = lines_of(res.out);
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto fields = fields_of(rows[i]);
        const int k = std::stoi(fields[0]);
        CHECK(std::stoi(fields[2]) == (k % 2 == 0 ? 1 : -1));
    }
}

TEST_CASE("cli: the precision floor variable reaches the kernel") {
    const char* exe = cli_path();
    if (!exe) return;

    const CliResult r = run_cli("JCDRESS_PRECISION_BITS=512 " + quoted(exe)
                                + " coeffs --delta 0.7 --g 0.3 --k-max 30");
    REQUIRE(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 32);
    const auto fields = fields_of(lines.back());
    REQUIRE(fields.size() == 4);
    CHECK(std::stol(fields[3]) >= 512);
}
