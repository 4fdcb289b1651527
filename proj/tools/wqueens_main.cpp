#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "wqueens/cli.hpp"

namespace {

using wq::Algorithm;
using wq::ColumnGateMode;
using wq::cli::RunMode;

const std::map<std::string, Algorithm> kAlgorithms = {
    {"pipeline", Algorithm::Pipeline},
    {"direct", Algorithm::DirectColumn},
    {"backtracking", Algorithm::QuantumBacktracking},
};

const std::map<std::string, RunMode> kModes = {
    {"exact", RunMode::Exact},
    {"shots", RunMode::Shots},
};

const std::map<std::string, ColumnGateMode> kColumnGates = {
    {"cx", ColumnGateMode::Cx},
    {"cz", ColumnGateMode::Cz},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum circuit toolkit for the n-queens problem"};
  app.require_subcommand(1);

  wq::cli::SolveArgs solve;
  std::string json_path;
  auto* solve_cmd =
      app.add_subcommand("solve", "Build a circuit, run it, list solutions");
  solve_cmd->add_option("--n", solve.n, "Board size")->capture_default_str();
  solve_cmd->add_option("--algorithm", solve.algorithm, "Circuit construction")
      ->transform(CLI::CheckedTransformer(kAlgorithms, CLI::ignore_case))
      ->capture_default_str();
  solve_cmd->add_option("--mode", solve.mode, "exact or shots")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case))
      ->capture_default_str();
  solve_cmd->add_option("--shots", solve.shots, "Samples in shots mode")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "Sampling seed")
      ->capture_default_str();
  solve_cmd
      ->add_option("--column-gate", solve.column_gate,
                   "Column-stage flavor, cx or cz")
      ->transform(CLI::CheckedTransformer(kColumnGates, CLI::ignore_case))
      ->capture_default_str();
  solve_cmd
      ->add_option("--dynamic", solve.dynamic,
                   "Condition the diagonal stage on column measurements")
      ->capture_default_str();
  solve_cmd
      ->add_option("--max-branches", solve.max_branches,
                   "Measurement branch cap")
      ->envname("WQ_MAX_BRANCHES")
      ->capture_default_str();
  solve_cmd->add_flag("--force", solve.force,
                      "Allow exact runs beyond the default size guard");
  solve_cmd->add_option("--json", json_path, "Write a JSON report here");

  wq::cli::CircuitArgs circuit;
  auto* circuit_cmd =
      app.add_subcommand("circuit", "Print a circuit as text");
  circuit_cmd->add_option("--n", circuit.n, "Board size")
      ->capture_default_str();
  circuit_cmd
      ->add_option("--algorithm", circuit.algorithm, "Circuit construction")
      ->transform(CLI::CheckedTransformer(kAlgorithms, CLI::ignore_case))
      ->capture_default_str();
  circuit_cmd
      ->add_option("--column-gate", circuit.column_gate,
                   "Column-stage flavor, cx or cz")
      ->transform(CLI::CheckedTransformer(kColumnGates, CLI::ignore_case))
      ->capture_default_str();
  circuit_cmd
      ->add_option("--dynamic", circuit.dynamic,
                   "Condition the diagonal stage on column measurements")
      ->capture_default_str();
  circuit_cmd->add_flag("--stats", circuit.stats,
                        "Print size metrics instead of the instruction list");
  circuit_cmd->add_flag("--force", circuit.force,
                        "Allow builds beyond the default size guard");

  wq::cli::VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Run every algorithm against the classical solver");
  verify_cmd->add_option("--n-max", verify.n_max, "Largest board size")
      ->capture_default_str();
  verify_cmd
      ->add_option("--max-branches", verify.max_branches,
                   "Measurement branch cap")
      ->envname("WQ_MAX_BRANCHES")
      ->capture_default_str();

  wq::cli::BenchArgs bench;
  auto* bench_cmd =
      app.add_subcommand("bench", "Time exact runs across board sizes");
  bench_cmd->add_option("--n-max", bench.n_max, "Largest board size")
      ->capture_default_str();
  bench_cmd
      ->add_option("--max-branches", bench.max_branches,
                   "Measurement branch cap")
      ->envname("WQ_MAX_BRANCHES")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return wq::cli::kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      if (!json_path.empty()) solve.json_path = json_path;
      return wq::cli::cmd_solve(solve, std::cout);
    }
    if (circuit_cmd->parsed()) {
      return wq::cli::cmd_circuit(circuit, std::cout);
    }
    if (verify_cmd->parsed()) {
      return wq::cli::cmd_verify(verify, std::cout);
    }
    return wq::cli::cmd_bench(bench, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wq::cli::kExitUsage;
  }
}
