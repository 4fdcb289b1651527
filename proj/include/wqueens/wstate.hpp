#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wqueens/circuit.hpp"

namespace wq {

// Two ways to spread a single excitation uniformly over k target qubits:
// Chain walks the excitation down the target list (depth 2k-1), Tree splits
// the amplitude recursively in halves (depth at most 1 + 2*ceil(log2 k)).
enum class WStrategy { Chain, Tree };

// Instructions taking |0...0> on targets to the uniform single-excitation
// state, every amplitude 1/sqrt(k), real and positive.
std::vector<Instruction> build_w(std::span<const int> targets,
                                 WStrategy strategy);

// Same state, applied only where every control qubit is 1. Requires the
// targets to be |0...0> in each such basis branch; every other branch is
// left untouched. An empty control list degenerates to build_w.
std::vector<Instruction> build_controlled_w(std::span<const int> controls,
                                            std::span<const int> targets,
                                            WStrategy strategy);

// Upper bound on the circuit depth of build_w for k targets.
std::size_t w_depth_bound(std::size_t num_targets, WStrategy strategy);

}  // namespace wq
