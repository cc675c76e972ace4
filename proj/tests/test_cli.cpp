#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ppbs/cli.hpp"
#include "ppbs/gate.hpp"

using namespace ppbs;
namespace fs = std::filesystem;

namespace {

std::string data_path(const std::string& name) {
    return std::string(PPBS_DATA_DIR) + "/" + name;
}

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("ppbs_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_binary(const std::string& args) {
    std::string cmd = std::string(PPBS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("resolve_circuit knows the built-ins and rejects junk") {
    auto full = cli::resolve_circuit("compact-cnot");
    CHECK(full.elements.size() == 3);
    auto comp = cli::resolve_circuit("compact-cnot-compensated");
    CHECK(comp.compensate_inputs);
    CHECK_THROWS_AS(cli::resolve_circuit("no-such-circuit"), validation_error);
}

TEST_CASE("simulate writes a consistent report and truth tables") {
    auto dir = fresh_dir("simulate");
    cli::SimulateOptions options;
    options.circuit = "compact-cnot";
    options.out_dir = dir.string();
    std::ostringstream sink;
    auto rep = cli::run_simulate(options, sink);

    CHECK(rep.f_zz == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.f_xx == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.bound_lower == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(rep.exact_process_fidelity.has_value());
    CHECK(*rep.exact_process_fidelity == doctest::Approx(1.0).epsilon(1e-10));
    REQUIRE(rep.avg_success.has_value());
    CHECK(std::abs(*rep.avg_success - 1.0 / 9.0) < 1e-12);

    CHECK(fs::exists(dir / "truth_zz.json"));
    CHECK(fs::exists(dir / "truth_xx.json"));
    CHECK(fs::exists(dir / "report.json"));
    CHECK(fs::exists(dir / "report.txt"));

    auto loaded = report::report_from_json(slurp(dir / "report.json"));
    CHECK(loaded.f_zz == rep.f_zz);
    CHECK(loaded.bound_upper == rep.bound_upper);
    CHECK(loaded.avg_success == rep.avg_success);
    CHECK(sink.str().find("F_zz") != std::string::npos);
}

TEST_CASE("simulate output is deterministic") {
    auto dir1 = fresh_dir("det1");
    auto dir2 = fresh_dir("det2");
    cli::SimulateOptions options;
    options.circuit = "compact-cnot-compensated";
    options.lambda = 0.85;
    std::ostringstream sink;
    options.out_dir = dir1.string();
    cli::run_simulate(options, sink);
    options.out_dir = dir2.string();
    cli::run_simulate(options, sink);
    CHECK(slurp(dir1 / "report.json") == slurp(dir2 / "report.json"));
    CHECK(slurp(dir1 / "report.txt") == slurp(dir2 / "report.txt"));
    CHECK(slurp(dir1 / "truth_zz.json") == slurp(dir2 / "truth_zz.json"));
}

TEST_CASE("certify reproduces the reference bounds from the golden files") {
    auto dir = fresh_dir("certify");
    cli::CertifyOptions options;
    options.zz_path = data_path("sample_counts_zz.json");
    options.xx_path = data_path("sample_counts_xx.json");
    options.out_dir = dir.string();
    std::ostringstream sink;
    auto rep = cli::run_certify(options, sink);

    CHECK(std::abs(rep.f_zz - 0.853) < 5e-4);
    CHECK(std::abs(rep.f_xx - 0.867) < 5e-4);
    CHECK(std::abs(rep.bound_lower - 0.720) < 1e-3);
    CHECK(std::abs(rep.bound_upper - 0.853) < 1e-3);
    CHECK(std::abs(rep.concurrence_lower - 0.440) < 1e-3);
    CHECK_FALSE(rep.exact_process_fidelity.has_value());

    // 3-decimal human rendering matches the published layout values.
    auto text = slurp(dir / "report.txt");
    CHECK(text.find("0.720 <= F_process <= 0.853") != std::string::npos);
    CHECK(text.find("C >= 0.440") != std::string::npos);
}

TEST_CASE("certify detects basis mismatch") {
    auto dir = fresh_dir("mismatch");
    cli::CertifyOptions options;
    options.zz_path = data_path("sample_counts_zz.json");
    options.xx_path = data_path("sample_counts_zz.json");
    options.out_dir = dir.string();
    std::ostringstream sink;
    CHECK_THROWS_WITH_AS(cli::run_certify(options, sink), doctest::Contains("basis mismatch"),
                         validation_error);
}

TEST_CASE("sweep writes one row per lambda with bounds containing the exact value") {
    auto dir = fresh_dir("sweep");
    cli::SweepOptions options;
    options.circuit = "compact-cnot";
    options.lambda_min = 0.6;
    options.lambda_max = 1.0;
    options.steps = 5;
    options.out_dir = dir.string();
    std::ostringstream sink;
    cli::run_sweep(options, sink);

    std::ifstream in(dir / "sweep.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "lambda,f_zz,f_xx,lower,upper,exact");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        double lam, fzz, fxx, lower, upper, exact;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &lam, &fzz, &fxx, &lower,
                            &upper, &exact) == 6);
        CHECK(exact >= lower - 1e-9);
        CHECK(exact <= upper + 1e-9);
    }
    CHECK(rows == 5);
}

TEST_CASE("report command re-renders and validates stored reports") {
    auto dir = fresh_dir("report");
    cli::SimulateOptions sim;
    sim.circuit = "compact-cnot";
    sim.out_dir = dir.string();
    std::ostringstream sink;
    cli::run_simulate(sim, sink);

    cli::ReportOptions ropt;
    ropt.in_path = (dir / "report.json").string();
    std::ostringstream render;
    auto rep = cli::run_report(ropt, render);
    CHECK(render.str().find("F_process") != std::string::npos);
    CHECK(rep.f_zz == doctest::Approx(1.0).epsilon(1e-12));

    // Tampered bounds are rejected.
    auto doc = slurp(dir / "report.json");
    auto pos = doc.find("\"lower\"");
    REQUIRE(pos != std::string::npos);
    doc.replace(pos, 16, "\"lower\": 0.123456");
    std::ofstream(dir / "bad.json") << doc;
    cli::ReportOptions bad;
    bad.in_path = (dir / "bad.json").string();
    CHECK_THROWS_AS(cli::run_report(bad, render), validation_error);
}

TEST_CASE("binary exit codes: 0 success, 1 validation, 2 numeric") {
    auto dir = fresh_dir("exit");
    CHECK(run_binary("simulate --circuit compact-cnot --out " + (dir / "ok").string()) == 0);
    CHECK(run_binary("certify --zz " + data_path("sample_counts_zz.json") + " --xx " +
                     data_path("sample_counts_zz.json") + " --out " + (dir / "bad").string()) == 1);
    CHECK(run_binary("simulate --circuit no-such-thing --out " + (dir / "x").string()) == 1);
    CHECK(run_binary("wat") == 1);

    // A circuit that routes both photons of one basis input into the same arm
    // has a zero coincidence row: numeric failure.
    std::ofstream(dir / "degenerate.json") << R"({
      "registry": ["c", "t"],
      "elements": [
        {"kind": "HWP", "theta": 0.39269908169872414, "arms": ["t"]},
        {"kind": "PBS", "arms": ["c", "t"]}
      ]
    })";
    CHECK(run_binary("simulate --circuit " + (dir / "degenerate.json").string() + " --out " +
                     (dir / "deg").string()) == 2);
}

TEST_CASE("binary certify matches the library path and is byte-deterministic") {
    auto dir = fresh_dir("bincert");
    std::string cmd = "certify --zz " + data_path("sample_counts_zz.json") + " --xx " +
                      data_path("sample_counts_xx.json") + " --out ";
    CHECK(run_binary(cmd + (dir / "a").string()) == 0);
    CHECK(run_binary(cmd + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));

    cli::CertifyOptions options;
    options.zz_path = data_path("sample_counts_zz.json");
    options.xx_path = data_path("sample_counts_xx.json");
    options.out_dir = (dir / "lib").string();
    std::ostringstream sink;
    cli::run_certify(options, sink);
    CHECK(slurp(dir / "lib" / "report.json") == slurp(dir / "a" / "report.json"));
}
