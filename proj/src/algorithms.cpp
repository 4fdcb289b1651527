#include "wqueens/algorithms.hpp"

#include <string>

namespace wq {

namespace {

constexpr WStrategy kBuilderStrategy = WStrategy::Tree;

// Board qubit indices are 1-based; circuit wires start at 0.
std::vector<int> to_circuit_qubits(const std::vector<int>& board_qubits) {
  std::vector<int> out;
  out.reserve(board_qubits.size());
  for (int q : board_qubits) out.push_back(q - 1);
  return out;
}

void append_all(Circuit& circuit, const std::vector<Instruction>& batch) {
  for (const auto& ins : batch) circuit.append(ins);
}

void add_plan_registers(Circuit& circuit, const BoardLayout& board,
                        const AncillaPlan& plan) {
  circuit.add_register("board", Register{false, 0, board.num_cells() - 1});
  const auto add_range = [&](const char* name, const std::vector<int>& idx,
                             bool classical) {
    if (!idx.empty()) {
      circuit.add_register(name, Register{classical, idx.front(), idx.back()});
    }
  };
  add_range("col_anc", plan.column_ancillas, false);
  add_range("diag_anc", plan.diagonal_ancillas, false);
  if (plan.backtracking_ancilla) {
    circuit.add_register("bt_anc", Register{false, *plan.backtracking_ancilla,
                                            *plan.backtracking_ancilla});
  }
  add_range("col_c", plan.column_clbits, true);
  add_range("diag_c", plan.diagonal_clbits, true);
  if (plan.backtracking_clbit) {
    circuit.add_register("bt_c", Register{true, *plan.backtracking_clbit,
                                          *plan.backtracking_clbit});
  }
}

// Depth-first over row prefixes. At each live prefix the next row receives a
// controlled W over `allowed(prefix)`, controlled by the queens placed so
// far; emitting before recursing matches the branch order of the state the
// gates create.
void emit_branches(const BoardLayout& board, ColumnFilter filter,
                   std::vector<int>& prefix, std::vector<Instruction>& out) {
  const int n = board.n();
  const int row = static_cast<int>(prefix.size()) + 1;
  const auto allowed = board.allowed_columns(prefix, filter);
  if (allowed.empty()) return;  // dead branch, nothing reaches this row

  std::vector<int> controls;
  controls.reserve(prefix.size());
  for (int r = 1; r < row; ++r) {
    controls.push_back(board.qubit_index({r, prefix[r - 1]}) - 1);
  }
  std::vector<int> targets;
  targets.reserve(allowed.size());
  for (int col : allowed) {
    targets.push_back(board.qubit_index({row, col}) - 1);
  }
  for (const auto& ins :
       build_controlled_w(controls, targets, kBuilderStrategy)) {
    out.push_back(ins);
  }
  if (row == n) return;
  for (int col : allowed) {
    prefix.push_back(col);
    emit_branches(board, filter, prefix, out);
    prefix.pop_back();
  }
}

std::vector<Instruction> build_branch_superposition(const BoardLayout& board,
                                                    ColumnFilter filter) {
  std::vector<Instruction> out;
  std::vector<int> prefix;
  emit_branches(board, filter, prefix, out);
  return out;
}

Condition all_ones(const std::vector<int>& clbits) {
  Condition cond;
  cond.terms.reserve(clbits.size());
  for (int c : clbits) cond.terms.emplace_back(c, true);
  return cond;
}

void require_ones(PostSelection& post, const std::vector<int>& clbits) {
  for (int c : clbits) post.required.emplace_back(c, true);
}

}  // namespace

AncillaPlan ancilla_plan(const BoardLayout& board, Algorithm algorithm) {
  const int n = board.n();
  AncillaPlan plan;
  int next_qubit = board.num_cells();
  int next_clbit = 0;
  if (algorithm == Algorithm::Pipeline) {
    for (int j = 1; j <= n - 1; ++j) plan.column_ancillas.push_back(next_qubit++);
  }
  if (algorithm == Algorithm::Pipeline || algorithm == Algorithm::DirectColumn) {
    for (int i = 0; i < n * (n - 1) / 2; ++i) {
      plan.diagonal_ancillas.push_back(next_qubit++);
    }
  }
  if (algorithm == Algorithm::QuantumBacktracking) {
    plan.backtracking_ancilla = next_qubit++;
  }
  for (std::size_t i = 0; i < plan.column_ancillas.size(); ++i) {
    plan.column_clbits.push_back(next_clbit++);
  }
  for (std::size_t i = 0; i < plan.diagonal_ancillas.size(); ++i) {
    plan.diagonal_clbits.push_back(next_clbit++);
  }
  if (plan.backtracking_ancilla) plan.backtracking_clbit = next_clbit++;
  plan.total_qubits = next_qubit;
  plan.total_clbits = next_clbit;
  return plan;
}

std::vector<Instruction> build_row_stage(const BoardLayout& board) {
  std::vector<Instruction> out;
  for (int row = 1; row <= board.n(); ++row) {
    const auto targets = to_circuit_qubits(board.row_qubits(row));
    for (const auto& ins : build_w(targets, kBuilderStrategy)) {
      out.push_back(ins);
    }
  }
  return out;
}

std::vector<Instruction> build_column_stage(const BoardLayout& board,
                                            const AncillaPlan& plan,
                                            ColumnGateMode mode) {
  const int n = board.n();
  std::vector<Instruction> out;
  if (mode == ColumnGateMode::Cz) {
    for (int anc : plan.column_ancillas) out.push_back(Instruction::h(anc));
  }
  for (int col = 1; col <= n - 1; ++col) {
    const int anc = plan.column_ancillas[static_cast<std::size_t>(col - 1)];
    for (int row = 1; row <= n; ++row) {
      const int q = board.qubit_index({row, col}) - 1;
      out.push_back(mode == ColumnGateMode::Cz ? Instruction::cz(q, anc)
                                               : Instruction::cx(q, anc));
    }
  }
  if (mode == ColumnGateMode::Cz) {
    for (int anc : plan.column_ancillas) out.push_back(Instruction::h(anc));
  }
  return out;
}

std::vector<Instruction> build_diagonal_stage(const BoardLayout& board,
                                              const AncillaPlan& plan) {
  const int n = board.n();
  std::vector<Instruction> out;
  for (int anc : plan.diagonal_ancillas) out.push_back(Instruction::x(anc));
  std::size_t pair_index = 0;
  for (int r = 1; r <= n; ++r) {
    for (int s = r + 1; s <= n; ++s, ++pair_index) {
      const int anc = plan.diagonal_ancillas[pair_index];
      for (const auto& [a, b] : board.diagonal_pairs(r, s)) {
        out.push_back(Instruction::mcx(
            {board.qubit_index(a) - 1, board.qubit_index(b) - 1}, anc));
      }
    }
  }
  return out;
}

std::vector<Instruction> build_permutation_superposition(
    const BoardLayout& board) {
  return build_branch_superposition(board, ColumnFilter::ColumnOnly);
}

BuiltCircuit build_pipeline(const BoardLayout& board,
                            const PipelineOptions& options) {
  const auto plan = ancilla_plan(board, Algorithm::Pipeline);
  Circuit circuit(plan.total_qubits, plan.total_clbits);
  add_plan_registers(circuit, board, plan);

  append_all(circuit, build_row_stage(board));
  append_all(circuit, build_column_stage(board, plan, options.column_gate_mode));

  const auto measure_range = [&](const std::vector<int>& qubits,
                                 const std::vector<int>& clbits) {
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      circuit.append(Instruction::measure(qubits[i], clbits[i]));
    }
  };

  const auto diagonal = build_diagonal_stage(board, plan);
  if (options.dynamic) {
    measure_range(plan.column_ancillas, plan.column_clbits);
    const Condition passed = all_ones(plan.column_clbits);
    for (const auto& ins : diagonal) {
      circuit.append(passed.terms.empty() ? ins : ins.conditioned_on(passed));
    }
    measure_range(plan.diagonal_ancillas, plan.diagonal_clbits);
  } else {
    append_all(circuit, diagonal);
    measure_range(plan.column_ancillas, plan.column_clbits);
    measure_range(plan.diagonal_ancillas, plan.diagonal_clbits);
  }

  PostSelection post;
  require_ones(post, plan.column_clbits);
  require_ones(post, plan.diagonal_clbits);
  return {std::move(circuit), std::move(post)};
}

BuiltCircuit build_direct_column(const BoardLayout& board) {
  const auto plan = ancilla_plan(board, Algorithm::DirectColumn);
  Circuit circuit(plan.total_qubits, plan.total_clbits);
  add_plan_registers(circuit, board, plan);

  append_all(circuit, build_permutation_superposition(board));
  append_all(circuit, build_diagonal_stage(board, plan));
  for (std::size_t i = 0; i < plan.diagonal_ancillas.size(); ++i) {
    circuit.append(Instruction::measure(plan.diagonal_ancillas[i],
                                        plan.diagonal_clbits[i]));
  }

  PostSelection post;
  require_ones(post, plan.diagonal_clbits);
  return {std::move(circuit), std::move(post)};
}

BuiltCircuit build_quantum_backtracking(const BoardLayout& board) {
  const int n = board.n();
  const auto plan = ancilla_plan(board, Algorithm::QuantumBacktracking);
  Circuit circuit(plan.total_qubits, plan.total_clbits);
  add_plan_registers(circuit, board, plan);

  append_all(circuit,
             build_branch_superposition(board, ColumnFilter::ColumnAndDiagonal));

  // Only branches that placed a queen on the last row flip the ancilla.
  for (int col = 1; col <= n; ++col) {
    circuit.append(Instruction::cx(board.qubit_index({n, col}) - 1,
                                   *plan.backtracking_ancilla));
  }
  circuit.append(Instruction::measure(*plan.backtracking_ancilla,
                                      *plan.backtracking_clbit));

  PostSelection post;
  post.required.emplace_back(*plan.backtracking_clbit, true);
  return {std::move(circuit), std::move(post)};
}

BuiltCircuit build_algorithm(const BoardLayout& board, Algorithm algorithm,
                             const PipelineOptions& options) {
  switch (algorithm) {
    case Algorithm::Pipeline: return build_pipeline(board, options);
    case Algorithm::DirectColumn: return build_direct_column(board);
    case Algorithm::QuantumBacktracking:
      return build_quantum_backtracking(board);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace wq
