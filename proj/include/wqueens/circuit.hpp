#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wq {

// Instruction set. X/H/RY/CX/CZ/CP/MCX/MCRY are unitary gates; Measure and
// Reset are the non-unitary operations. Qubits and classical bits are
// 0-based at this layer.
enum class OpType { X, H, RY, CX, CZ, CP, MCX, MCRY, Measure, Reset };

bool is_unitary(OpType op);
bool has_angle(OpType op);
std::string_view op_name(OpType op);

// Conjunction of classical-bit requirements; an instruction carrying one
// executes only when every listed bit holds the listed value.
struct Condition {
  std::vector<std::pair<int, bool>> terms;
  bool operator==(const Condition&) const = default;
};

struct Instruction {
  OpType op = OpType::X;
  std::vector<int> controls;  // control qubits, empty unless the gate has any
  int target = -1;            // target qubit (measured/reset qubit included)
  double theta = 0.0;         // RY, CP, MCRY rotation angle
  int clbit = -1;             // Measure destination
  std::optional<Condition> condition;

  static Instruction x(int q);
  static Instruction h(int q);
  static Instruction ry(int q, double theta);
  static Instruction cx(int control, int t);
  static Instruction cz(int control, int t);
  static Instruction cp(int control, int t, double theta);
  static Instruction mcx(std::vector<int> controls, int t);
  static Instruction mcry(std::vector<int> controls, int t, double theta);
  static Instruction measure(int q, int c);
  static Instruction reset(int q);

  Instruction conditioned_on(Condition c) const;

  bool operator==(const Instruction&) const = default;
};

// Multi-controlled X/RY that collapse to the narrowest matching gate kind
// (X/CX/MCX resp. RY/MCRY) for an empty or single-element control list.
Instruction controlled_x(std::vector<int> controls, int target);
Instruction controlled_ry(std::vector<int> controls, int target, double theta);

class CircuitError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Qubit or classical bit outside the circuit.
class IndexError : public CircuitError {
  using CircuitError::CircuitError;
};
// Repeated or colliding operands within one instruction.
class OverlapError : public CircuitError {
  using CircuitError::CircuitError;
};
// Condition names a classical bit no earlier Measure has written, or is empty.
class ConditionError : public CircuitError {
  using CircuitError::CircuitError;
};
// Text that does not match the circuit grammar.
class ParseError : public CircuitError {
 public:
  ParseError(int line, const std::string& what)
      : CircuitError("line " + std::to_string(line) + ": " + what),
        line(line) {}
  int line;
};

// Register label over a contiguous qubit or classical-bit range (inclusive).
struct Register {
  bool classical = false;
  int first = 0;
  int last = 0;
  bool operator==(const Register&) const = default;
};

// Flat instruction list plus register labels. append validates fully before
// storing, so a throw never changes the circuit.
//
// Text form (UTF-8, LF, '#' starts a comment, angles carry 17 significant
// digits):
//
//   CIRCUIT qubits=25 clbits=9
//   REG board q0..q15
//   REG col_c c0..c2
//   H q0
//   RY(1.2309594173407747) q1
//   CX q0 -> q1
//   MCX q0,q5 -> q9
//   MCRY(0.5) q0,q1 -> q2
//   MEASURE q16 -> c0
//   RESET q4
//   X q3 ? c0=1,c2=0
class Circuit {
 public:
  Circuit(int num_qubits, int num_clbits);

  int num_qubits() const { return num_qubits_; }
  int num_clbits() const { return num_clbits_; }

  void append(const Instruction& ins);
  void add_register(const std::string& name, Register reg);

  const std::vector<Instruction>& instructions() const { return instructions_; }
  const std::map<std::string, Register>& registers() const {
    return registers_;
  }
  // Register lookup that returns nothing for unknown names.
  const Register* find_register(const std::string& name) const;

  // Histogram over unitary gates only; Measure/Reset are not counted.
  std::map<OpType, std::size_t> gate_counts() const;
  std::size_t num_unitary_gates() const;

  // Longest dependency chain. Two instructions depend on each other when
  // they share a qubit or a classical bit (conditions count as reads).
  std::size_t depth() const;

  std::string emit_text() const;

  bool operator==(const Circuit&) const = default;

 private:
  void validate(const Instruction& ins) const;

  int num_qubits_;
  int num_clbits_;
  std::vector<Instruction> instructions_;
  std::map<std::string, Register> registers_;
  std::vector<bool> clbit_written_;
};

// Inverse of Circuit::emit_text. Grammar violations throw ParseError with the
// line number; all semantic checks from append apply unchanged.
Circuit parse_text(std::string_view text);

// 17-significant-digit rendering used for angles; round-trips any double.
std::string format_angle(double value);

}  // namespace wq
