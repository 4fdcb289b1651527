#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wqueens/algorithms.hpp"
#include "wqueens/bits.hpp"
#include "wqueens/board.hpp"
#include "wqueens/circuit.hpp"

namespace wq {

using Amplitude = std::complex<double>;

// Amplitudes below this are dropped after every gate; the probability mass
// removed over a whole run is tracked and stays below 1e-12 in practice.
inline constexpr double kAmplitudeFloor = 1e-14;

struct SparseState {
  std::unordered_map<BasisKey, Amplitude, BasisKeyHash> amplitudes;

  static SparseState zero_state() { return {{{BasisKey{0}, Amplitude{1.0}}}}; }
  double norm_sq() const;
  // Removes entries under the floor, returns the probability mass dropped.
  double prune(double floor = kAmplitudeFloor);
  // Keys in ascending order; measurement and readout iterate in this order
  // so results do not depend on hash-map layout.
  std::vector<BasisKey> sorted_keys() const;
};

// One classical execution path: the classical bits recorded so far, the
// normalized quantum state conditioned on them, and the path probability.
// Across all live branches the weights sum to 1.
struct Branch {
  std::vector<std::uint8_t> clbits;
  SparseState state;
  double weight = 1.0;
};

class ResourceLimitError : public std::runtime_error {
 public:
  ResourceLimitError(std::size_t branches, std::size_t limit)
      : std::runtime_error("branch count " + std::to_string(branches) +
                           " exceeds the limit of " + std::to_string(limit)),
        branches(branches),
        limit(limit) {}
  std::size_t branches;
  std::size_t limit;
};

struct RunOptions {
  std::size_t max_branches = std::size_t{1} << 20;
  // Verify that branch weights and state norms stay consistent after every
  // instruction (slow; meant for tests).
  bool check_norms = false;
  // When nonzero, fail if any branch ever stores more basis states than this.
  std::size_t sparsity_cap = 0;
};

struct RunStats {
  std::size_t gate_applications = 0;       // unitary instruction, per branch
  double weighted_gate_applications = 0;   // same, weighted by branch weight
  std::vector<double> per_instruction_weight;  // indexed like instructions()
  std::size_t branches_explored = 0;       // terminal branch count
  std::size_t peak_branches = 0;
  std::size_t peak_state_entries = 0;
  double pruned_probability = 0;
  double wall_ms = 0;
};

// Terminal readout record: final classical bits (bit i = clbit i) plus the
// basis values of the board register, with their total probability.
struct Outcome {
  std::uint64_t clbits = 0;
  BasisKey board_bits = 0;
  double probability = 0;
};

struct RunResult {
  std::vector<Outcome> outcomes;  // sorted by (clbits, board_bits)
  double total_probability = 0;
  int num_clbits = 0;
  RunStats stats;
};

// Applies one unitary gate to a state (conditions are ignored here; they are
// branch-level and handled by the run loop).
SparseState apply_gate(const SparseState& state, const Instruction& ins);

// Splits a branch on a qubit measurement. Zero-probability outcomes are
// dropped, so the result holds one or two branches.
std::vector<Branch> measure_branch(const Branch& branch, int qubit, int clbit);

// Deterministic exact execution: every measurement forks the branch list,
// conditioned instructions run only on matching branches, and the terminal
// branches are read out over the circuit's "board" register (all qubits when
// no such register exists).
RunResult run_exact(const Circuit& circuit, const RunOptions& options = {});

// Per-shot sampling with one RNG stream derived from (seed, shot index);
// identical inputs give identical counts. Keys are (clbits, board bits).
using ShotKey = std::pair<std::uint64_t, BasisKey>;
std::map<ShotKey, std::uint64_t> run_shots(const Circuit& circuit,
                                           std::uint64_t shots,
                                           std::uint64_t seed,
                                           const RunOptions& options = {});

struct SolutionList {
  // Placements with their outcome probability, lexicographically sorted.
  std::vector<std::pair<Solution, double>> solutions;
  double success_probability = 0;
};

// Filters outcomes through the post-selection and decodes each surviving
// board bitstring. A decode failure means the circuit builder emitted a
// state that is not a valid placement, so it surfaces as std::logic_error.
SolutionList extract_solutions(const RunResult& result,
                               const BoardLayout& board,
                               const PostSelection& post);

}  // namespace wq
