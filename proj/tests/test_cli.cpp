// End-to-end checks of the command-line tool. The binary path arrives via the
// NETLIMIT_BIN environment variable (set by the test harness); every case
// spawns a fresh process and inspects combined stdout/stderr plus the exit
// code.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const char* bin = std::getenv("NETLIMIT_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "NETLIMIT_BIN must point at the binary");
    const std::string cmd =
        env_prefix + " '" + std::string(bin) + "' " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("limit reports a converging estimate with its error bound") {
    auto r = run_cli("limit '(x^2-1)/(x-1)' --dir left:1");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "Converges: 2.000000 (±0)\n");
}

TEST_CASE("limit handles constants in three steps") {
    auto r = run_cli("limit 7 --dir both:0");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "Converges: 7.000000 (±0)\n");
}

TEST_CASE("limit classifies oscillation and exits with the extended code") {
    auto r = run_cli("limit 'sin(1/x)' --dir right:0");
    CHECK(r.exit_code == 2);
    CHECK(r.output == "Oscillates: liminf=-1.000 limsup=1.000\n");
}

TEST_CASE("limit classifies divergence in both signs") {
    auto r = run_cli("limit '1/(1-x)' --dir left:1");
    CHECK(r.exit_code == 2);
    CHECK(r.output == "Diverges: to +infinity\n");

    r = run_cli("limit '-1/(1-x)' --dir left:1");
    CHECK(r.exit_code == 2);
    CHECK(r.output == "Diverges: to -infinity\n");
}

TEST_CASE("limit admits defeat with a budget too small") {
    auto r = run_cli("limit n --dir seq --steps 4");
    CHECK(r.exit_code == 3);
    CHECK(contains(r.output, "Inconclusive:"));
    CHECK(contains(r.output, "4 chain steps"));
}

TEST_CASE("limit reports evaluation failures distinctly") {
    auto r = run_cli("limit 'sqrt(-1-x)' --dir right:0");
    CHECK(r.exit_code == 4);
    CHECK(contains(r.output, "evaluation failed:"));
    CHECK(contains(r.output, "produced no usable samples"));
}

TEST_CASE("certify prints one anchor per epsilon") {
    auto r = run_cli("certify '2*x+1' --dir both:1 --value 3 --eps 0.0625,0.0078125");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "certified limit 3.000000 along x -> 1\n"));
    CHECK(contains(r.output, "  eps 0.0625: delta = 0.03125 (anchor at 0.96875,"));
    CHECK(contains(r.output, "  eps 0.0078125: delta = 0.00390625 ("));
    CHECK(contains(r.output, "samples verified)"));
}

TEST_CASE("certify refuses an uncertifiable claim") {
    auto r = run_cli("certify 'sin(1/x)' --dir right:0 --value 0 --eps 0.1");
    CHECK(r.exit_code == 5);
    CHECK(contains(r.output, "certification failed:"));
    CHECK(contains(r.output, "epsilon 0.1 not certified"));
}

TEST_CASE("certify rejects a wrong claimed value") {
    auto r = run_cli("certify '2*x+1' --dir both:1 --value 3.5 --eps 0.01");
    CHECK(r.exit_code == 5);
    CHECK(contains(r.output, "certification failed:"));
}

TEST_CASE("riemann integrates the identity exactly at machine scale") {
    auto r = run_cli("riemann x 0 1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "Converges: 0.500000 (±<1e-9)\n"));
    CHECK(contains(r.output, "final mesh: 0.25\n"));
}

TEST_CASE("riemann refines until the tolerance is met") {
    auto r = run_cli("riemann 'x^2' 0 1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "Converges: 0.333333 ("));
    CHECK(contains(r.output, "final mesh: "));
}

TEST_CASE("usage problems exit with code one") {
    auto r = run_cli("limit x --dir mid:3");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "'mid:3' is not a direction"));

    r = run_cli("limit '1/(x' --dir right:0");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "parse error at offset 4: expected ')'"));

    r = run_cli("limit x");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "--dir is required"));

    r = run_cli("certify x --dir right:0 --value 0");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "--eps is required"));
}

TEST_CASE("help exits cleanly") {
    auto r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "limit"));
    CHECK(contains(r.output, "certify"));
    CHECK(contains(r.output, "riemann"));
    CHECK(contains(r.output, "axioms"));
}

TEST_CASE("axioms prints one line per check plus a summary") {
    auto r = run_cli("axioms --dirs seq --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "[PASS] constants"));
    CHECK(contains(r.output, "[PASS] inequality "));
    CHECK(contains(r.output, "[PASS] inequality_theorem"));
    CHECK(contains(r.output, "[PASS] monotone_bounded"));
    CHECK(contains(r.output, "[PASS] sandwich"));
    CHECK(contains(r.output, "[PASS] uniqueness"));
    CHECK(contains(r.output, "along n -> inf"));
    CHECK(contains(r.output, "summary: 6/6 checks passed (seed 3)\n"));
}

TEST_CASE("axioms seed comes from the flag, the environment, or the default") {
    auto r = run_cli("axioms --dirs seq", "NETLIMIT_SEED=9");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "(seed 9)"));

    r = run_cli("axioms --dirs seq --seed 5", "NETLIMIT_SEED=9");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "(seed 5)"));  // the flag wins

    r = run_cli("axioms --dirs seq");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "(seed 42)"));  // built-in default

    r = run_cli("axioms --dirs seq", "NETLIMIT_SEED=xyz");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "'xyz' is not an unsigned integer seed"));
}

TEST_CASE("json output is byte-identical across reruns") {
    const std::string args = "limit '(x^2-1)/(x-1)' --dir left:1 --json";
    auto a = run_cli(args);
    auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    REQUIRE(!a.output.empty());
    CHECK(a.output == b.output);
    CHECK(a.output.back() == '\n');

    auto c = run_cli("axioms --dirs seq --seed 3 --json");
    auto d = run_cli("axioms --dirs seq --seed 3 --json");
    CHECK(c.exit_code == 0);
    CHECK(c.output == d.output);
}

TEST_CASE("json carries the verdict, the trace, and the full configuration") {
    auto r = run_cli("limit '(x^2-1)/(x-1)' --dir left:1 --json");
    CHECK(contains(r.output, "\"verdict\": \"converges\""));
    CHECK(contains(r.output, "\"value\": 2.0"));
    CHECK(contains(r.output, "\"error_bound\": 0.0"));
    CHECK(contains(r.output, "\"direction\": \"x -> 1^-\""));
    CHECK(contains(r.output, "\"expression\": \"(x^2-1)/(x-1)\""));
    CHECK(contains(r.output, "\"tolerance\": 1e-09"));
    CHECK(contains(r.output, "\"trace\""));
    CHECK(contains(r.output, "\"M\": 2.0"));

    r = run_cli("limit 'sin(1/x)' --dir right:0 --json");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "\"verdict\": \"oscillates\""));
    CHECK(contains(r.output, "\"liminf\":"));
    CHECK(contains(r.output, "\"limsup\":"));

    r = run_cli("certify '2*x+1' --dir both:1 --value 3 --eps 0.0625 --json");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"delta_label\": \"delta\""));
    CHECK(contains(r.output, "\"limit\": 3.0"));
    CHECK(contains(r.output, "\"epsilon\": 0.0625"));
    CHECK(contains(r.output, "\"delta\": 0.03125"));
    CHECK(contains(r.output, "\"anchor\": 0.96875"));

    r = run_cli("axioms --dirs seq --seed 3 --json");
    CHECK(contains(r.output, "\"passed\": true"));
    CHECK(contains(r.output, "\"seed\": 3"));
    CHECK(contains(r.output, "\"axiom_reports\""));
    CHECK(contains(r.output, "\"axiom\": \"constants\""));
}
