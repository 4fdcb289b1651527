#include "wqueens/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "wqueens/oracle.hpp"
#include "wqueens/simulator.hpp"

namespace wq::cli {

namespace {

// Exact-mode guard: larger boards are possible but explode in memory and
// time, so they require --force.
constexpr int kDefaultMaxN = 8;

std::string_view mode_name(RunMode mode) {
  return mode == RunMode::Exact ? "exact" : "shots";
}

std::string render_board(int n, const Solution& solution) {
  std::string out;
  for (int row = 1; row <= n; ++row) {
    std::string line(static_cast<std::size_t>(n), '.');
    line[static_cast<std::size_t>(solution[row - 1] - 1)] = 'Q';
    out += line;
    out += '\n';
  }
  return out;
}

std::string format_probability(double value) {
  // %.17g keeps every probability bit-exact through a JSON round trip.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

struct SolveOutcome {
  SolutionList list;
  std::size_t branches = 0;
  RunStats stats;
};

SolveOutcome run_circuit(const BuiltCircuit& built, const BoardLayout& board,
                         const SolveArgs& args) {
  SolveOutcome out;
  RunOptions options;
  options.max_branches = args.max_branches;
  if (args.mode == RunMode::Exact) {
    const RunResult result = run_exact(built.circuit, options);
    out.list = extract_solutions(result, board, built.post_selection);
    out.branches = result.stats.branches_explored;
    out.stats = result.stats;
  } else {
    const auto counts =
        run_shots(built.circuit, args.shots, args.seed, options);
    RunResult empirical;
    empirical.num_clbits = built.circuit.num_clbits();
    std::set<std::uint64_t> paths;
    for (const auto& [key, count] : counts) {
      empirical.outcomes.push_back(
          Outcome{key.first, key.second,
                  static_cast<double>(count) / static_cast<double>(args.shots)});
      paths.insert(key.first);
    }
    out.list = extract_solutions(empirical, board, built.post_selection);
    out.branches = paths.size();
  }
  return out;
}

void write_json_report(std::ostream& os, const SolveArgs& args,
                       const Circuit& circuit, const SolveOutcome& outcome,
                       std::size_t oracle_count, bool oracle_match,
                       double wall_ms) {
  os << "{\n";
  os << "  \"n\": " << args.n << ",\n";
  os << "  \"algorithm\": \"" << algorithm_name(args.algorithm) << "\",\n";
  os << "  \"mode\": \"" << mode_name(args.mode) << "\",\n";
  if (args.mode == RunMode::Shots) {
    os << "  \"seed\": " << args.seed << ",\n";
  }
  os << "  \"solutions\": [";
  for (std::size_t i = 0; i < outcome.list.solutions.size(); ++i) {
    const auto& [solution, probability] = outcome.list.solutions[i];
    os << (i == 0 ? "\n" : ",\n") << "    {\"cols\": [";
    for (std::size_t j = 0; j < solution.size(); ++j) {
      os << (j == 0 ? "" : ", ") << solution[j];
    }
    os << "], \"probability\": " << format_probability(probability)
       << "}";
  }
  os << (outcome.list.solutions.empty() ? "]" : "\n  ]") << ",\n";
  os << "  \"success_probability\": "
     << format_probability(outcome.list.success_probability) << ",\n";
  os << "  \"oracle_count\": " << oracle_count << ",\n";
  os << "  \"oracle_match\": " << (oracle_match ? "true" : "false") << ",\n";
  os << "  \"circuit\": {\n";
  os << "    \"qubits\": " << circuit.num_qubits() << ",\n";
  os << "    \"clbits\": " << circuit.num_clbits() << ",\n";
  os << "    \"gates\": {";
  const auto counts = circuit.gate_counts();
  bool first = true;
  for (const auto& [op, count] : counts) {
    os << (first ? "" : ", ") << "\"" << op_name(op) << "\": " << count;
    first = false;
  }
  os << "},\n";
  os << "    \"depth\": " << circuit.depth() << ",\n";
  os << "    \"branches_explored\": " << outcome.branches << "\n";
  os << "  },\n";
  char wall[64];
  std::snprintf(wall, sizeof wall, "%.3f", wall_ms);
  os << "  \"wall_time_ms\": " << wall << "\n";
  os << "}\n";
}

int validate_n(int n, bool force, bool guarded, std::ostream& out) {
  if (n < 1) {
    out << "error: --n must be at least 1\n";
    return kExitUsage;
  }
  if (n > 11) {
    out << "error: --n above 11 exceeds the 128-bit state key\n";
    return kExitUsage;
  }
  if (guarded && n > kDefaultMaxN && !force) {
    out << "error: --n above " << kDefaultMaxN
        << " needs --force (expect heavy memory use)\n";
    return kExitUsage;
  }
  return kExitOk;
}

struct VerifyCell {
  bool pass = true;
  std::string reason;
};

VerifyCell verify_one(const BoardLayout& board, Algorithm algorithm,
                      const std::vector<Solution>& expected,
                      std::uint64_t max_branches, const CircuitTweak& tweak) {
  BuiltCircuit built = build_algorithm(board, algorithm);
  if (tweak) {
    built.circuit = tweak(built.circuit, board.n(), algorithm);
  }
  RunOptions options;
  options.max_branches = max_branches;
  const RunResult result = run_exact(built.circuit, options);
  SolutionList list;
  try {
    list = extract_solutions(result, board, built.post_selection);
  } catch (const std::logic_error& e) {
    return {false, e.what()};
  }
  std::vector<Solution> got;
  got.reserve(list.solutions.size());
  for (const auto& [solution, probability] : list.solutions) {
    got.push_back(solution);
  }
  if (got != expected) {
    return {false,
            "solution set mismatch, got " + std::to_string(got.size()) +
                " placements, oracle has " + std::to_string(expected.size())};
  }
  return {};
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Pipeline: return "pipeline";
    case Algorithm::DirectColumn: return "direct";
    case Algorithm::QuantumBacktracking: return "backtracking";
  }
  return "?";
}

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  // Shots mode simulates the same sparse state, so the guard applies to both.
  const int rc = validate_n(args.n, args.force, true, out);
  if (rc != kExitOk) return rc;

  const BoardLayout board(args.n);
  const PipelineOptions options{args.column_gate, args.dynamic};
  const BuiltCircuit built = build_algorithm(board, args.algorithm, options);

  const auto start = std::chrono::steady_clock::now();
  SolveOutcome outcome;
  try {
    outcome = run_circuit(built, board, args);
  } catch (const ResourceLimitError& e) {
    out << "error: " << e.what() << " (raise --max-branches or WQ_MAX_BRANCHES)\n";
    return kExitResourceLimit;
  }
  const double wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();

  const auto oracle_solutions = oracle::solve_classical(args.n);
  std::vector<Solution> got;
  got.reserve(outcome.list.solutions.size());
  for (const auto& [solution, probability] : outcome.list.solutions) {
    got.push_back(solution);
  }
  const bool oracle_match = got == oracle_solutions;

  out << "algorithm=" << algorithm_name(args.algorithm) << " n=" << args.n
      << " mode=" << mode_name(args.mode);
  if (args.mode == RunMode::Shots) {
    out << " shots=" << args.shots << " seed=" << args.seed;
  }
  out << "\n";
  out << "qubits=" << built.circuit.num_qubits()
      << " clbits=" << built.circuit.num_clbits()
      << " unitary_gates=" << built.circuit.num_unitary_gates()
      << " depth=" << built.circuit.depth() << "\n";
  out << "solutions=" << outcome.list.solutions.size()
      << " oracle_count=" << oracle_solutions.size()
      << " oracle_match=" << (oracle_match ? "true" : "false") << "\n";
  out << "success_probability="
      << format_probability(outcome.list.success_probability) << "\n";
  for (const auto& [solution, probability] : outcome.list.solutions) {
    out << "solution cols=[";
    for (std::size_t i = 0; i < solution.size(); ++i) {
      out << (i == 0 ? "" : ",") << solution[i];
    }
    out << "] probability=" << format_probability(probability) << "\n";
    out << render_board(args.n, solution);
  }
  out << "branches=" << outcome.branches << " wall_ms=";
  char wall[64];
  std::snprintf(wall, sizeof wall, "%.3f", wall_ms);
  out << wall << "\n";

  if (args.json_path) {
    std::ofstream file(*args.json_path);
    if (!file) {
      out << "error: cannot write " << *args.json_path << "\n";
      return kExitUsage;
    }
    write_json_report(file, args, built.circuit, outcome,
                      oracle_solutions.size(), oracle_match, wall_ms);
  }
  return oracle_match ? kExitOk : kExitMismatch;
}

int cmd_circuit(const CircuitArgs& args, std::ostream& out) {
  // Direct-column construction enumerates prefixes classically, so even a
  // dump gets expensive past the guard.
  const int rc = validate_n(args.n, args.force, true, out);
  if (rc != kExitOk) return rc;

  const BoardLayout board(args.n);
  const PipelineOptions options{args.column_gate, args.dynamic};
  const BuiltCircuit built = build_algorithm(board, args.algorithm, options);

  if (!args.stats) {
    out << built.circuit.emit_text();
    return kExitOk;
  }
  out << "qubits=" << built.circuit.num_qubits() << "\n";
  out << "clbits=" << built.circuit.num_clbits() << "\n";
  out << "instructions=" << built.circuit.instructions().size() << "\n";
  out << "unitary_gates=" << built.circuit.num_unitary_gates() << "\n";
  out << "depth=" << built.circuit.depth() << "\n";
  out << "gates:";
  for (const auto& [op, count] : built.circuit.gate_counts()) {
    out << " " << op_name(op) << "=" << count;
  }
  out << "\n";
  return kExitOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out,
               const CircuitTweak& tweak) {
  if (args.n_max < 1 || args.n_max > kDefaultMaxN) {
    out << "error: --n-max must be in [1, " << kDefaultMaxN << "]\n";
    return kExitUsage;
  }
  // Solution counts for n = 1..8; any drift here means the oracle broke.
  static constexpr std::size_t kKnownCounts[] = {1, 0, 0, 2, 10, 4, 40, 92};

  constexpr Algorithm kAll[] = {Algorithm::Pipeline, Algorithm::DirectColumn,
                                Algorithm::QuantumBacktracking};
  int passed = 0;
  int total = 0;
  std::string first_failure;

  for (int n = 1; n <= args.n_max; ++n) {
    const BoardLayout board(n);
    const auto expected = oracle::solve_classical(n);
    if (expected.size() != kKnownCounts[n - 1]) {
      out << "verify: FAIL n=" << n << " oracle count "
          << expected.size() << " does not match the known value "
          << kKnownCounts[n - 1] << "\n";
      return kExitMismatch;
    }
    out << "n=" << n;
    for (Algorithm algorithm : kAll) {
      ++total;
      VerifyCell cell;
      try {
        cell = verify_one(board, algorithm, expected, args.max_branches, tweak);
      } catch (const ResourceLimitError& e) {
        out << "\n";
        out << "error: " << e.what() << "\n";
        return kExitResourceLimit;
      }
      out << " " << algorithm_name(algorithm) << "="
          << (cell.pass ? "PASS" : "FAIL");
      if (cell.pass) {
        ++passed;
      } else if (first_failure.empty()) {
        first_failure = "n=" + std::to_string(n) + " algorithm=" +
                        std::string(algorithm_name(algorithm)) + ": " +
                        cell.reason;
      }
    }
    out << "\n";
  }
  if (passed == total) {
    out << "verify: PASS cells=" << passed << "/" << total << "\n";
    return kExitOk;
  }
  out << "verify: FAIL cells=" << passed << "/" << total << " first "
      << first_failure << "\n";
  return kExitMismatch;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  if (args.n_max < 1 || args.n_max > kDefaultMaxN) {
    out << "error: --n-max must be in [1, " << kDefaultMaxN << "]\n";
    return kExitUsage;
  }
  constexpr Algorithm kAll[] = {Algorithm::Pipeline, Algorithm::DirectColumn,
                                Algorithm::QuantumBacktracking};
  out << std::left << std::setw(3) << "n" << std::setw(14) << "algorithm"
      << std::right << std::setw(7) << "qubits" << std::setw(7) << "clbits"
      << std::setw(8) << "gates" << std::setw(7) << "depth" << std::setw(12)
      << "wall_ms" << "\n";
  for (int n = 1; n <= args.n_max; ++n) {
    const BoardLayout board(n);
    for (Algorithm algorithm : kAll) {
      const BuiltCircuit built = build_algorithm(board, algorithm);
      RunOptions options;
      options.max_branches = args.max_branches;
      std::string wall = "limit";
      try {
        const RunResult result = run_exact(built.circuit, options);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", result.stats.wall_ms);
        wall = buf;
      } catch (const ResourceLimitError&) {
        // Leave the row in place; the limit itself is the result.
      }
      out << std::left << std::setw(3) << n << std::setw(14)
          << algorithm_name(algorithm) << std::right << std::setw(7)
          << built.circuit.num_qubits() << std::setw(7)
          << built.circuit.num_clbits() << std::setw(8)
          << built.circuit.num_unitary_gates() << std::setw(7)
          << built.circuit.depth() << std::setw(12) << wall << "\n";
    }
  }
  return kExitOk;
}

}  // namespace wq::cli
