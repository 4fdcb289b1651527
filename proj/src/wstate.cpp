#include "wqueens/wstate.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace wq {

namespace {

void check_operands(std::span<const int> controls,
                    std::span<const int> targets) {
  if (targets.empty()) {
    throw std::invalid_argument("a W state needs at least one target");
  }
  std::set<int> seen;
  for (int q : controls) {
    if (!seen.insert(q).second) {
      throw std::invalid_argument("control qubit " + std::to_string(q) +
                                  " repeats");
    }
  }
  for (int q : targets) {
    if (!seen.insert(q).second) {
      throw std::invalid_argument("qubit " + std::to_string(q) +
                                  " repeats across controls and targets");
    }
  }
}

std::vector<int> with_extra(std::span<const int> controls, int extra) {
  std::vector<int> out(controls.begin(), controls.end());
  out.push_back(extra);
  return out;
}

// Moves the excitation from targets[k-1] to targets[k] with weight
// (n-k)/(n-k+1), leaving 1/sqrt(n) behind at each step.
void emit_chain(std::span<const int> controls, std::span<const int> targets,
                std::vector<Instruction>& out) {
  const std::size_t n = targets.size();
  out.push_back(controlled_x({controls.begin(), controls.end()}, targets[0]));
  for (std::size_t k = 1; k < n; ++k) {
    const double share = static_cast<double>(n - k) / static_cast<double>(n - k + 1);
    const double theta = 2.0 * std::asin(std::sqrt(share));
    out.push_back(controlled_ry(with_extra(controls, targets[k - 1]),
                                targets[k], theta));
    out.push_back(controlled_x(with_extra(controls, targets[k]),
                               targets[k - 1]));
  }
}

// Splits the excitation held at targets[start] over count qubits, sending
// floor(count/2) of the weight to the right half so both halves can split
// further in parallel.
void emit_tree_split(std::span<const int> controls,
                     std::span<const int> targets, std::size_t start,
                     std::size_t count, std::vector<Instruction>& out) {
  if (count <= 1) return;
  const std::size_t right = count / 2;
  const std::size_t left = count - right;
  const double theta =
      2.0 * std::asin(std::sqrt(static_cast<double>(right) /
                                static_cast<double>(count)));
  out.push_back(controlled_ry(with_extra(controls, targets[start]),
                              targets[start + left], theta));
  out.push_back(controlled_x(with_extra(controls, targets[start + left]),
                             targets[start]));
  emit_tree_split(controls, targets, start, left, out);
  emit_tree_split(controls, targets, start + left, right, out);
}

}  // namespace

std::vector<Instruction> build_controlled_w(std::span<const int> controls,
                                            std::span<const int> targets,
                                            WStrategy strategy) {
  check_operands(controls, targets);
  std::vector<Instruction> out;
  out.reserve(2 * targets.size());
  switch (strategy) {
    case WStrategy::Chain:
      emit_chain(controls, targets, out);
      break;
    case WStrategy::Tree:
      out.push_back(
          controlled_x({controls.begin(), controls.end()}, targets[0]));
      emit_tree_split(controls, targets, 0, targets.size(), out);
      break;
  }
  return out;
}

std::vector<Instruction> build_w(std::span<const int> targets,
                                 WStrategy strategy) {
  return build_controlled_w({}, targets, strategy);
}

std::size_t w_depth_bound(std::size_t num_targets, WStrategy strategy) {
  if (num_targets == 0) {
    throw std::invalid_argument("a W state needs at least one target");
  }
  if (strategy == WStrategy::Chain) return 2 * num_targets - 1;
  std::size_t levels = 0;
  for (std::size_t span = 1; span < num_targets; span *= 2) ++levels;
  return 1 + 2 * levels;
}

}  // namespace wq
