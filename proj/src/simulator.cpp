#include "wqueens/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace wq {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool controls_set(BasisKey key, const std::vector<int>& controls) {
  for (int c : controls) {
    if (!key_test(key, c)) return false;
  }
  return true;
}

bool condition_holds(const Instruction& ins,
                     const std::vector<std::uint8_t>& clbits) {
  if (!ins.condition) return true;
  for (const auto& [clbit, value] : ins.condition->terms) {
    if ((clbits[static_cast<std::size_t>(clbit)] != 0) != value) return false;
  }
  return true;
}

using AmplitudeMap = std::unordered_map<BasisKey, Amplitude, BasisKeyHash>;

// Gates fall into three shapes: phase-only (values change in place),
// permutation (keys move), and mixing (one key fans out to two).
void apply_gate_impl(SparseState& state, const Instruction& ins) {
  auto& amps = state.amplitudes;
  switch (ins.op) {
    case OpType::CZ: {
      const int control = ins.controls[0];
      for (auto& [key, amp] : amps) {
        if (key_test(key, control) && key_test(key, ins.target)) amp = -amp;
      }
      return;
    }
    case OpType::CP: {
      const int control = ins.controls[0];
      const Amplitude phase = std::polar(1.0, ins.theta);
      for (auto& [key, amp] : amps) {
        if (key_test(key, control) && key_test(key, ins.target)) amp *= phase;
      }
      return;
    }
    case OpType::X:
    case OpType::CX:
    case OpType::MCX: {
      AmplitudeMap next;
      next.reserve(amps.size());
      for (const auto& [key, amp] : amps) {
        next.emplace(controls_set(key, ins.controls)
                         ? key_flip(key, ins.target)
                         : key,
                     amp);
      }
      amps = std::move(next);
      return;
    }
    case OpType::H: {
      AmplitudeMap next;
      next.reserve(2 * amps.size());
      for (const auto& [key, amp] : amps) {
        const BasisKey low = key & ~key_bit(ins.target);
        next[low] += amp * kInvSqrt2;
        next[low | key_bit(ins.target)] +=
            (key_test(key, ins.target) ? -amp : amp) * kInvSqrt2;
      }
      amps = std::move(next);
      return;
    }
    case OpType::RY:
    case OpType::MCRY: {
      const double c = std::cos(ins.theta / 2);
      const double s = std::sin(ins.theta / 2);
      AmplitudeMap next;
      next.reserve(2 * amps.size());
      for (const auto& [key, amp] : amps) {
        if (!controls_set(key, ins.controls)) {
          next[key] += amp;
          continue;
        }
        if (key_test(key, ins.target)) {
          next[key_flip(key, ins.target)] -= s * amp;
          next[key] += c * amp;
        } else {
          next[key] += c * amp;
          next[key_flip(key, ins.target)] += s * amp;
        }
      }
      amps = std::move(next);
      return;
    }
    case OpType::Measure:
    case OpType::Reset:
      throw std::logic_error("apply_gate only handles unitary gates");
  }
}

// Probability of reading 1 on `qubit`, summed in key order.
double probability_of_one(const SparseState& state, int qubit) {
  double p1 = 0;
  for (BasisKey key : state.sorted_keys()) {
    if (key_test(key, qubit)) p1 += std::norm(state.amplitudes.at(key));
  }
  return p1;
}

SparseState collapse(const SparseState& state, int qubit, bool value,
                     double probability) {
  SparseState out;
  out.amplitudes.reserve(state.amplitudes.size());
  const double scale = 1.0 / std::sqrt(probability);
  for (const auto& [key, amp] : state.amplitudes) {
    if (key_test(key, qubit) == value) out.amplitudes.emplace(key, amp * scale);
  }
  return out;
}

// Branch probabilities this small are measurement round-off, not real paths.
constexpr double kBranchFloor = 1e-18;

struct BoardWindow {
  std::vector<int> qubits;

  static BoardWindow from_circuit(const Circuit& circuit) {
    BoardWindow window;
    if (const Register* reg = circuit.find_register("board");
        reg != nullptr && !reg->classical) {
      for (int q = reg->first; q <= reg->last; ++q) window.qubits.push_back(q);
    } else {
      for (int q = 0; q < circuit.num_qubits(); ++q) window.qubits.push_back(q);
    }
    return window;
  }

  BasisKey gather(BasisKey key) const {
    BasisKey out = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      if (key_test(key, qubits[i])) out |= key_bit(static_cast<int>(i));
    }
    return out;
  }
};

std::uint64_t pack_clbits(const std::vector<std::uint8_t>& clbits) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < clbits.size(); ++i) {
    if (clbits[i]) out |= std::uint64_t{1} << i;
  }
  return out;
}

void check_simulable(const Circuit& circuit) {
  if (circuit.num_qubits() > 128) {
    throw std::invalid_argument("the simulator handles at most 128 qubits, circuit has " +
                                std::to_string(circuit.num_qubits()));
  }
  if (circuit.num_clbits() > 64) {
    throw std::invalid_argument("the simulator handles at most 64 classical bits, circuit has " +
                                std::to_string(circuit.num_clbits()));
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t shot) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (shot + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double SparseState::norm_sq() const {
  double total = 0;
  for (const auto& [key, amp] : amplitudes) total += std::norm(amp);
  return total;
}

double SparseState::prune(double floor) {
  double removed = 0;
  for (auto it = amplitudes.begin(); it != amplitudes.end();) {
    if (std::abs(it->second) < floor) {
      removed += std::norm(it->second);
      it = amplitudes.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

std::vector<BasisKey> SparseState::sorted_keys() const {
  std::vector<BasisKey> keys;
  keys.reserve(amplitudes.size());
  for (const auto& [key, amp] : amplitudes) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  return keys;
}

SparseState apply_gate(const SparseState& state, const Instruction& ins) {
  SparseState out = state;
  apply_gate_impl(out, ins);
  out.prune();
  return out;
}

std::vector<Branch> measure_branch(const Branch& branch, int qubit,
                                   int clbit) {
  const double p1 = probability_of_one(branch.state, qubit);
  const double total = branch.state.norm_sq();
  const double p0 = total - p1;
  std::vector<Branch> out;
  for (const bool value : {false, true}) {
    const double p = value ? p1 : p0;
    if (p / total < kBranchFloor) continue;
    Branch next;
    next.clbits = branch.clbits;
    if (clbit >= 0) next.clbits[static_cast<std::size_t>(clbit)] = value;
    next.state = collapse(branch.state, qubit, value, p);
    next.weight = branch.weight * (p / total);
    out.push_back(std::move(next));
  }
  return out;
}

RunResult run_exact(const Circuit& circuit, const RunOptions& options) {
  check_simulable(circuit);
  const auto start = std::chrono::steady_clock::now();

  RunResult result;
  result.num_clbits = circuit.num_clbits();
  result.stats.per_instruction_weight.assign(circuit.instructions().size(), 0.0);

  std::vector<Branch> branches;
  branches.push_back(Branch{
      std::vector<std::uint8_t>(static_cast<std::size_t>(circuit.num_clbits()), 0),
      SparseState::zero_state(), 1.0});

  const auto enforce_caps = [&](const std::vector<Branch>& current) {
    if (current.size() > options.max_branches) {
      throw ResourceLimitError(current.size(), options.max_branches);
    }
    result.stats.peak_branches =
        std::max(result.stats.peak_branches, current.size());
    for (const auto& b : current) {
      result.stats.peak_state_entries = std::max(
          result.stats.peak_state_entries, b.state.amplitudes.size());
      if (options.sparsity_cap != 0 &&
          b.state.amplitudes.size() > options.sparsity_cap) {
        throw std::logic_error(
            "branch holds " + std::to_string(b.state.amplitudes.size()) +
            " basis states, above the expected cap of " +
            std::to_string(options.sparsity_cap));
      }
    }
  };
  enforce_caps(branches);

  for (std::size_t index = 0; index < circuit.instructions().size(); ++index) {
    const Instruction& ins = circuit.instructions()[index];
    if (ins.op == OpType::Measure || ins.op == OpType::Reset) {
      std::vector<Branch> next;
      next.reserve(branches.size() + 1);
      for (const auto& branch : branches) {
        if (!condition_holds(ins, branch.clbits)) {
          next.push_back(branch);
          continue;
        }
        for (Branch& split :
             measure_branch(branch, ins.target,
                            ins.op == OpType::Measure ? ins.clbit : -1)) {
          if (ins.op == OpType::Reset && !split.state.amplitudes.empty() &&
              key_test(split.state.amplitudes.begin()->first, ins.target)) {
            // Send the measured-1 half back to |0>.
            apply_gate_impl(split.state, Instruction::x(ins.target));
          }
          next.push_back(std::move(split));
        }
      }
      branches = std::move(next);
      enforce_caps(branches);
    } else {
      for (auto& branch : branches) {
        if (!condition_holds(ins, branch.clbits)) continue;
        apply_gate_impl(branch.state, ins);
        result.stats.pruned_probability +=
            branch.weight * branch.state.prune();
        ++result.stats.gate_applications;
        result.stats.weighted_gate_applications += branch.weight;
        result.stats.per_instruction_weight[index] += branch.weight;
      }
      enforce_caps(branches);
    }

    if (options.check_norms) {
      double weighted_norm = 0;
      double total_weight = 0;
      for (const auto& branch : branches) {
        weighted_norm += branch.weight * branch.state.norm_sq();
        total_weight += branch.weight;
      }
      if (std::abs(weighted_norm - 1.0) > 1e-9 ||
          std::abs(total_weight - 1.0) > 1e-9) {
        throw std::logic_error(
            "norm drifted at instruction " + std::to_string(index) + ": " +
            std::to_string(weighted_norm));
      }
    }
  }

  const BoardWindow window = BoardWindow::from_circuit(circuit);
  std::map<std::pair<std::uint64_t, BasisKey>, double> grouped;
  for (const auto& branch : branches) {
    const std::uint64_t clbits = pack_clbits(branch.clbits);
    for (BasisKey key : branch.state.sorted_keys()) {
      grouped[{clbits, window.gather(key)}] +=
          branch.weight * std::norm(branch.state.amplitudes.at(key));
    }
  }
  result.outcomes.reserve(grouped.size());
  for (const auto& [key, probability] : grouped) {
    result.outcomes.push_back(Outcome{key.first, key.second, probability});
    result.total_probability += probability;
  }
  result.stats.branches_explored = branches.size();
  result.stats.wall_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

std::map<ShotKey, std::uint64_t> run_shots(const Circuit& circuit,
                                           std::uint64_t shots,
                                           std::uint64_t seed,
                                           const RunOptions& options) {
  check_simulable(circuit);
  (void)options;
  std::map<ShotKey, std::uint64_t> counts;
  const BoardWindow window = BoardWindow::from_circuit(circuit);

  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    std::mt19937_64 rng(mix_seed(seed, shot));
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    SparseState state = SparseState::zero_state();
    std::vector<std::uint8_t> clbits(
        static_cast<std::size_t>(circuit.num_clbits()), 0);

    for (const Instruction& ins : circuit.instructions()) {
      if (!condition_holds(ins, clbits)) continue;
      if (ins.op == OpType::Measure || ins.op == OpType::Reset) {
        const double total = state.norm_sq();
        const double p1 = probability_of_one(state, ins.target);
        const bool value = uniform(rng) < p1 / total;
        state = collapse(state, ins.target, value, value ? p1 : total - p1);
        if (ins.op == OpType::Measure) {
          clbits[static_cast<std::size_t>(ins.clbit)] = value;
        } else if (value) {
          apply_gate_impl(state, Instruction::x(ins.target));
        }
      } else {
        apply_gate_impl(state, ins);
        state.prune();
      }
    }

    // Sample the terminal state over the board window.
    const double total = state.norm_sq();
    const double draw = uniform(rng) * total;
    double cumulative = 0;
    BasisKey picked = 0;
    for (BasisKey key : state.sorted_keys()) {
      picked = key;
      cumulative += std::norm(state.amplitudes.at(key));
      if (cumulative >= draw) break;
    }
    ++counts[{pack_clbits(clbits), window.gather(picked)}];
  }
  return counts;
}

SolutionList extract_solutions(const RunResult& result,
                               const BoardLayout& board,
                               const PostSelection& post) {
  std::map<Solution, double> accepted;
  for (const Outcome& outcome : result.outcomes) {
    bool keep = true;
    for (const auto& [clbit, value] : post.required) {
      if (((outcome.clbits >> clbit) & 1) != static_cast<std::uint64_t>(value)) {
        keep = false;
        break;
      }
    }
    if (!keep) continue;
    try {
      accepted[board.decode_solution(outcome.board_bits)] +=
          outcome.probability;
    } catch (const DecodeError& e) {
      throw std::logic_error(
          std::string("post-selected outcome is not a queen placement: ") +
          e.what());
    }
  }
  SolutionList list;
  list.solutions.assign(accepted.begin(), accepted.end());
  for (const auto& [solution, probability] : list.solutions) {
    list.success_probability += probability;
  }
  return list;
}

}  // namespace wq
