#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "wqueens/board.hpp"
#include "wqueens/circuit.hpp"
#include "wqueens/cli.hpp"

using namespace wq;

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

CommandResult run_cli(const std::string& arguments,
                      const std::string& env_prefix = "") {
  const std::string command =
      env_prefix + (env_prefix.empty() ? "" : " ") + WQ_CLI_PATH + " " +
      arguments + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CommandResult result;
  char buffer[4096];
  while (std::fgets(buffer, sizeof buffer, pipe) != nullptr) {
    result.output += buffer;
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// Timing varies run to run; everything else must be reproducible.
std::string without_timing_lines(const std::string& output) {
  std::istringstream in(output);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (contains(line, "wall_ms")) continue;
    kept += line;
    kept += '\n';
  }
  return kept;
}

}  // namespace

TEST_CASE("solve reports the n=4 pipeline result") {
  const CommandResult result = run_cli("solve --n 4");
  CHECK(result.exit_code == 0);
  CHECK(contains(result.output, "algorithm=pipeline n=4 mode=exact"));
  CHECK(contains(result.output, "qubits=25 clbits=9"));
  CHECK(contains(result.output, "solutions=2 oracle_count=2 oracle_match=true"));
  CHECK(contains(result.output, "success_probability=0.0078125"));
  CHECK(contains(result.output, "solution cols=[2,4,1,3] probability=0.00390625"));
  CHECK(contains(result.output, ".Q..\n...Q\nQ...\n..Q.\n"));
}

TEST_CASE("solve succeeds on boards without solutions") {
  const CommandResult result = run_cli("solve --n 2 --algorithm backtracking");
  CHECK(result.exit_code == 0);
  CHECK(contains(result.output, "solutions=0 oracle_count=0 oracle_match=true"));
  CHECK(contains(result.output, "success_probability=0\n"));
}

TEST_CASE("solve writes a machine-readable report") {
  const std::string path = "wq_solve_report.json";
  const CommandResult result = run_cli("solve --n 4 --json " + path);
  REQUIRE(result.exit_code == 0);

  std::ifstream file(path);
  REQUIRE(file.good());
  const nlohmann::json report = nlohmann::json::parse(file);
  std::remove(path.c_str());

  CHECK(report.at("n") == 4);
  CHECK(report.at("algorithm") == "pipeline");
  CHECK(report.at("mode") == "exact");
  CHECK(!report.contains("seed"));
  CHECK(report.at("oracle_count") == 2);
  CHECK(report.at("oracle_match") == true);
  CHECK(report.at("success_probability").get<double>() ==
        doctest::Approx(0.0078125).epsilon(1e-9));
  REQUIRE(report.at("solutions").size() == 2);
  CHECK(report.at("solutions")[0].at("cols") == std::vector<int>{2, 4, 1, 3});
  CHECK(report.at("solutions")[0].at("probability").get<double>() ==
        doctest::Approx(0.00390625).epsilon(1e-9));
  CHECK(report.at("solutions")[1].at("cols") == std::vector<int>{3, 1, 4, 2});
  CHECK(report.at("circuit").at("qubits") == 25);
  CHECK(report.at("circuit").at("clbits") == 9);
  CHECK(report.at("circuit").at("gates").at("MCX") == 28);
  CHECK(report.at("circuit").at("gates").at("CX") == 24);
  CHECK(report.at("circuit").at("depth").get<int>() > 0);
  CHECK(report.at("wall_time_ms").get<double>() >= 0.0);
}

TEST_CASE("shot mode is reproducible for a fixed seed") {
  const std::string arguments = "solve --n 4 --mode shots --shots 512 --seed 7";
  const CommandResult first = run_cli(arguments);
  const CommandResult second = run_cli(arguments);
  CHECK(first.exit_code == 0);
  CHECK(second.exit_code == 0);
  CHECK(contains(first.output, "mode=shots shots=512 seed=7"));
  CHECK(without_timing_lines(first.output) ==
        without_timing_lines(second.output));
}

TEST_CASE("a starved shot budget misses solutions and reports mismatch") {
  const CommandResult result =
      run_cli("solve --n 5 --mode shots --shots 1 --seed 0");
  CHECK(result.exit_code == 1);
  CHECK(contains(result.output, "oracle_match=false"));
}

TEST_CASE("the circuit dump round-trips through the parser") {
  for (const char* arguments :
       {"circuit --n 3", "circuit --n 3 --algorithm direct",
        "circuit --n 3 --algorithm backtracking",
        "circuit --n 2 --dynamic false", "circuit --n 2 --column-gate cz"}) {
    CAPTURE(arguments);
    const CommandResult result = run_cli(arguments);
    CHECK(result.exit_code == 0);
    CHECK(parse_text(result.output).emit_text() == result.output);
  }
}

TEST_CASE("the one-cell backtracking circuit is printed verbatim") {
  const CommandResult result = run_cli("circuit --n 1 --algorithm backtracking");
  CHECK(result.exit_code == 0);
  CHECK(result.output ==
        "CIRCUIT qubits=2 clbits=1\n"
        "REG board q0..q0\n"
        "REG bt_anc q1..q1\n"
        "REG bt_c c0..c0\n"
        "X q0\n"
        "CX q0 -> q1\n"
        "MEASURE q1 -> c0\n");
}

TEST_CASE("circuit --stats summarises both column-gate modes") {
  const CommandResult cx = run_cli("circuit --n 4 --stats");
  CHECK(cx.exit_code == 0);
  CHECK(contains(cx.output, "qubits=25"));
  CHECK(contains(cx.output, "clbits=9"));
  CHECK(contains(cx.output, "instructions=83"));
  CHECK(contains(cx.output, "unitary_gates=74"));
  CHECK(contains(cx.output, "CX=24"));
  CHECK(!contains(cx.output, "H="));

  const CommandResult cz = run_cli("circuit --n 4 --stats --column-gate cz");
  CHECK(cz.exit_code == 0);
  CHECK(contains(cz.output, "H=6"));
  CHECK(contains(cz.output, "CZ=12"));
  CHECK(contains(cz.output, "CX=12"));
}

TEST_CASE("verify passes every board and algorithm up to n=5") {
  const CommandResult result = run_cli("verify");
  CHECK(result.exit_code == 0);
  CHECK(contains(result.output, "n=4 pipeline=PASS direct=PASS backtracking=PASS"));
  CHECK(contains(result.output, "verify: PASS cells=15/15"));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("solve --frobnicate").exit_code == 2);
  CHECK(run_cli("solve --algorithm bogus").exit_code == 2);
  CHECK(run_cli("solve --n 0").exit_code == 2);
  CHECK(run_cli("verify --n-max 9").exit_code == 2);

  const CommandResult big = run_cli("solve --n 12 --force");
  CHECK(big.exit_code == 2);
  CHECK(contains(big.output, "128-bit"));

  const CommandResult guarded = run_cli("solve --n 9");
  CHECK(guarded.exit_code == 2);
  CHECK(contains(guarded.output, "--force"));
  CHECK(run_cli("circuit --n 9").exit_code == 2);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("solve --help").exit_code == 0);
}

TEST_CASE("the branch limit surfaces as exit code 3") {
  const CommandResult flag = run_cli("solve --n 4 --max-branches 1");
  CHECK(flag.exit_code == 3);
  CHECK(contains(flag.output, "raise --max-branches or WQ_MAX_BRANCHES"));

  const CommandResult env = run_cli("solve --n 4", "WQ_MAX_BRANCHES=1");
  CHECK(env.exit_code == 3);

  // An explicit flag beats the environment.
  const CommandResult both =
      run_cli("solve --n 4 --max-branches 1048576", "WQ_MAX_BRANCHES=1");
  CHECK(both.exit_code == 0);
}

TEST_CASE("bench prints a row per board and algorithm") {
  const CommandResult result = run_cli("bench --n-max 2");
  CHECK(result.exit_code == 0);
  CHECK(contains(result.output, "algorithm"));
  CHECK(contains(result.output, "pipeline"));
  CHECK(contains(result.output, "backtracking"));
}

TEST_CASE("verify spots a builder that drops a detection gate") {
  // Remove the ancilla link from the cell in row 4, column 3. The solution
  // [2,4,1,3] ends on that cell, so backtracking stops reporting it.
  const cli::CircuitTweak drop_link = [](const Circuit& circuit, int n,
                                         Algorithm algorithm) {
    if (n != 4 || algorithm != Algorithm::QuantumBacktracking) return circuit;
    const BoardLayout board(4);
    const int linked = board.qubit_index({4, 3}) - 1;
    Circuit patched(circuit.num_qubits(), circuit.num_clbits());
    for (const auto& [name, reg] : circuit.registers()) {
      patched.add_register(name, reg);
    }
    for (const auto& ins : circuit.instructions()) {
      if (ins.op == OpType::CX && ins.controls == std::vector<int>{linked}) {
        continue;
      }
      patched.append(ins);
    }
    return patched;
  };

  std::ostringstream out;
  cli::VerifyArgs args;
  args.n_max = 4;
  const int exit_code = cli::cmd_verify(args, out, drop_link);
  CHECK(exit_code == 1);
  CHECK(contains(out.str(), "n=4 pipeline=PASS direct=PASS backtracking=FAIL"));
  CHECK(contains(out.str(), "verify: FAIL cells=11/12"));
  CHECK(contains(out.str(), "first n=4 algorithm=backtracking"));
}

TEST_CASE("in-process verify passes for small boards") {
  std::ostringstream out;
  cli::VerifyArgs args;
  args.n_max = 3;
  CHECK(cli::cmd_verify(args, out) == 0);
  CHECK(contains(out.str(), "verify: PASS cells=9/9"));
}

TEST_CASE("bench marks starved rows instead of failing") {
  std::ostringstream out;
  cli::BenchArgs args;
  args.n_max = 2;
  args.max_branches = 1;
  CHECK(cli::cmd_bench(args, out) == 0);
  CHECK(contains(out.str(), "limit"));
}
