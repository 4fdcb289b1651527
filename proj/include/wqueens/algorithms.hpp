#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wqueens/board.hpp"
#include "wqueens/circuit.hpp"
#include "wqueens/wstate.hpp"

namespace wq {

enum class Algorithm { Pipeline, DirectColumn, QuantumBacktracking };

enum class ColumnGateMode { Cx, Cz };

struct PipelineOptions {
  ColumnGateMode column_gate_mode = ColumnGateMode::Cx;
  // With dynamic circuits the column ancillas are measured mid-circuit and
  // the whole diagonal stage is conditioned on every column check passing;
  // otherwise all measurements sit at the end.
  bool dynamic = true;
};

// Ancilla qubits and the classical bits their measurements land in, all
// 0-based circuit indices. Board qubits always occupy 0..n*n-1.
struct AncillaPlan {
  std::vector<int> column_ancillas;    // one per column 1..n-1
  std::vector<int> diagonal_ancillas;  // one per row pair, lexicographic
  std::optional<int> backtracking_ancilla;
  std::vector<int> column_clbits;
  std::vector<int> diagonal_clbits;
  std::optional<int> backtracking_clbit;
  int total_qubits = 0;
  int total_clbits = 0;
};

// Classical-bit requirements a readout must satisfy to count as accepted.
struct PostSelection {
  std::vector<std::pair<int, bool>> required;
  bool operator==(const PostSelection&) const = default;
};

struct BuiltCircuit {
  Circuit circuit;
  PostSelection post_selection;
};

AncillaPlan ancilla_plan(const BoardLayout& board, Algorithm algorithm);

// One W state per row: the uniform superposition of all one-queen-per-row
// placements (n^n basis states).
std::vector<Instruction> build_row_stage(const BoardLayout& board);

// Writes the parity of column j's board qubits onto column ancilla j.
// Cz mode sandwiches phase flips between Hadamards; Cx mode uses plain
// CX gates and needs 2(n-1) fewer H gates for the same ancilla values.
std::vector<Instruction> build_column_stage(const BoardLayout& board,
                                            const AncillaPlan& plan,
                                            ColumnGateMode mode);

// Initialises each row-pair ancilla to |1> and flips it back to |0> when the
// two rows hold diagonally attacking queens (one Toffoli per aligned pair).
std::vector<Instruction> build_diagonal_stage(const BoardLayout& board,
                                              const AncillaPlan& plan);

// Row-by-row controlled W states over the columns still unused per branch;
// leaves the uniform superposition of all n! permutation placements.
std::vector<Instruction> build_permutation_superposition(
    const BoardLayout& board);

// Row stage, column parity checks, then the diagonal stage. Post-selection
// keeps runs where every ancilla measured 1.
BuiltCircuit build_pipeline(const BoardLayout& board,
                            const PipelineOptions& options = {});

// Permutation superposition followed by the diagonal stage; only diagonal
// ancillas remain to check.
BuiltCircuit build_direct_column(const BoardLayout& board);

// Controlled W states restricted to non-attacking columns, so only solution
// and dead-end branches survive; a single ancilla collects whether the last
// row was reached.
BuiltCircuit build_quantum_backtracking(const BoardLayout& board);

BuiltCircuit build_algorithm(const BoardLayout& board, Algorithm algorithm,
                             const PipelineOptions& options = {});

}  // namespace wq
