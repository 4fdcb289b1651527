#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "wqueens/algorithms.hpp"

namespace wq::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResourceLimit = 3;

enum class RunMode { Exact, Shots };

std::string_view algorithm_name(Algorithm algorithm);

struct SolveArgs {
  int n = 4;
  Algorithm algorithm = Algorithm::Pipeline;
  RunMode mode = RunMode::Exact;
  std::uint64_t shots = 4096;
  std::uint64_t seed = 0;
  ColumnGateMode column_gate = ColumnGateMode::Cx;
  bool dynamic = true;
  std::uint64_t max_branches = std::uint64_t{1} << 20;
  bool force = false;  // lifts the default n <= 8 exact-mode guard
  std::optional<std::string> json_path;
};

struct CircuitArgs {
  int n = 4;
  Algorithm algorithm = Algorithm::Pipeline;
  ColumnGateMode column_gate = ColumnGateMode::Cx;
  bool dynamic = true;
  bool stats = false;  // print a summary instead of the full dump
  bool force = false;
};

struct VerifyArgs {
  int n_max = 5;
  std::uint64_t max_branches = std::uint64_t{1} << 20;
};

struct BenchArgs {
  int n_max = 5;
  std::uint64_t max_branches = std::uint64_t{1} << 20;
};

// Test hook: rewrites a freshly built circuit before verification, standing
// in for a builder defect. Production callers leave it empty.
using CircuitTweak =
    std::function<Circuit(const Circuit&, int n, Algorithm algorithm)>;

int cmd_solve(const SolveArgs& args, std::ostream& out);
int cmd_circuit(const CircuitArgs& args, std::ostream& out);
int cmd_verify(const VerifyArgs& args, std::ostream& out,
               const CircuitTweak& tweak = {});
int cmd_bench(const BenchArgs& args, std::ostream& out);

}  // namespace wq::cli
