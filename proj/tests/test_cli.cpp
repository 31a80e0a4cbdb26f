// End-to-end checks of the command-line tool. The test runner provides the
// binary path in PLUFG_BIN; every invocation goes through the shell with
// stdout/stderr captured to a scratch file.

#include <doctest.h>

#include "plufg/data_io.hpp"
#include "test_support.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace plufg;
using namespace testsup;

namespace {

std::string binary_path() {
    const char* bin = std::getenv("PLUFG_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "PLUFG_BIN must point at the plufg binary");
    return bin;
}

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
    static int counter = 0;
    const std::string capture =
        (std::filesystem::temp_directory_path() / ("plufg_cli_" + std::to_string(counter++)))
            .string();
    const std::string cmd =
        env + (env.empty() ? "" : " ") + "\"" + binary_path() + "\" " + args + " > " +
        capture + " 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(capture);
    std::stringstream buf;
    buf << in.rdbuf();
    res.output = buf.str();
    std::filesystem::remove(capture);
    return res;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate diffusion prints the residual table and succeeds") {
    const CliResult res = run_cli("validate diffusion");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("instance,p,phi,corrected_residual,literal_residual") !=
          std::string::npos);
    CHECK(res.output.find("ok: update identity") != std::string::npos);
    CHECK(res.output.find("FAIL") == std::string::npos);
}

TEST_CASE("all validation targets succeed") {
    for (const char* target : {"framelet", "solver", "energy"}) {
        const CliResult res = run_cli(std::string("validate ") + target);
        CHECK_MESSAGE(res.exit_code == 0, "validate ", target, " output:\n", res.output);
        CHECK(res.output.find("FAIL") == std::string::npos);
    }
}

TEST_CASE("usage errors exit with status 1") {
    CHECK(run_cli("--definitely-not-a-flag").exit_code == 1);
    CHECK(run_cli("train").exit_code == 1);  // --config is required
    const CliResult res = run_cli("train --config /nonexistent/cfg.json");
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("error:") != std::string::npos);
}

TEST_CASE("synth writes a loadable dataset directory") {
    const ScratchDir dir("cli_synth");
    const std::string out = dir.file("ds");
    const CliResult res = run_cli(
        "synth --out " + out + " --n 40 --classes 2 --p-in 0.3 --p-out 0.05 --feat-dim 3");
    CHECK(res.exit_code == 0);
    const Dataset ds = load_dataset(out);
    CHECK(ds.graph.num_nodes() == 40);
    CHECK(ds.num_classes == 2);
}

TEST_CASE("PLUFG_SEED overrides the configured seed") {
    const ScratchDir dir("cli_seed");
    const std::string base = " --n 40 --classes 2 --p-in 0.3 --p-out 0.05 --feat-dim 3";
    CHECK(run_cli("synth --out " + dir.file("a") + base + " --seed 0", "PLUFG_SEED=7")
              .exit_code == 0);
    CHECK(run_cli("synth --out " + dir.file("b") + base + " --seed 7").exit_code == 0);
    CHECK(run_cli("synth --out " + dir.file("c") + base + " --seed 0").exit_code == 0);

    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const std::string a = slurp(dir.file("a") + "/edges.tsv");
    CHECK(a == slurp(dir.file("b") + "/edges.tsv"));  // env seed == explicit seed 7
    CHECK(a != slurp(dir.file("c") + "/edges.tsv"));  // and differs from seed 0
}

TEST_CASE("energy-trace writes a trace CSV and a verdict line") {
    const ScratchDir dir("cli_trace");
    {
        std::ofstream cfg(dir.file("cfg.json"));
        cfg << R"({
            "dataset": {"synth": {"n": 60, "classes": 2, "p_in": 0.25, "p_out": 0.05,
                                   "feat_dim": 3, "signal": 1.0}},
            "dynamics": "HFD",
            "plap": {"p": 1.5, "mu": 5.0, "max_iters": 15},
            "trace_out": ")"
            << dir.file("trace.csv") << R"("
        })";
    }
    const CliResult res = run_cli("energy-trace --config " + dir.file("cfg.json"));
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("\"verdict\"") != std::string::npos);
    CHECK(res.output.find("rho_half") != std::string::npos);
    const EnergyTrace trace = read_trace(dir.file("trace.csv"));
    CHECK(trace.size() >= 2);
}

TEST_CASE("train reports accuracies and appends a results row") {
    const ScratchDir dir("cli_train");
    {
        std::ofstream cfg(dir.file("cfg.json"));
        cfg << R"({
            "dataset": {"synth": {"n": 60, "classes": 2, "p_in": 0.25, "p_out": 0.02,
                                   "feat_dim": 4, "signal": 1.0}},
            "dynamics": "LFD",
            "plap": {"p": 2.0, "mu": 1.0, "max_iters": 15},
            "head": {"epochs": 120},
            "out": ")"
            << dir.file("results.csv") << R"("
        })";
    }
    const CliResult res = run_cli("train --config " + dir.file("cfg.json"));
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("test_acc") != std::string::npos);
    const auto rows = read_results(dir.file("results.csv"));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].dynamics == "LFD");
    CHECK(rows[0].test_acc >= 0.0);
    CHECK(rows[0].test_acc <= 1.0);
}

TEST_CASE("sweep writes one row per (mu, p, seed) combination") {
    const ScratchDir dir("cli_sweep");
    const CliResult res = run_cli(
        "sweep --dataset synth-homo --dynamics LFD --mu-grid 0.1,20 --p-grid 1.5 "
        "--seeds 1 --out " +
        dir.file("results.csv"));
    CHECK(res.exit_code == 0);
    const auto rows = read_results(dir.file("results.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].mu == 0.1);
    CHECK(rows[1].mu == 20.0);
    CHECK(rows[0].p == 1.5);
    CHECK(rows[0].dynamics == "LFD");
}

}  // TEST_SUITE("cli")
