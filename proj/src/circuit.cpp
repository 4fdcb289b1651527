#include "wqueens/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

namespace wq {

bool is_unitary(OpType op) {
  return op != OpType::Measure && op != OpType::Reset;
}

bool has_angle(OpType op) {
  return op == OpType::RY || op == OpType::CP || op == OpType::MCRY;
}

std::string_view op_name(OpType op) {
  switch (op) {
    case OpType::X: return "X";
    case OpType::H: return "H";
    case OpType::RY: return "RY";
    case OpType::CX: return "CX";
    case OpType::CZ: return "CZ";
    case OpType::CP: return "CP";
    case OpType::MCX: return "MCX";
    case OpType::MCRY: return "MCRY";
    case OpType::Measure: return "MEASURE";
    case OpType::Reset: return "RESET";
  }
  return "?";
}

namespace {

Instruction make(OpType op, std::vector<int> controls, int target,
                 double theta = 0.0, int clbit = -1) {
  Instruction ins;
  ins.op = op;
  ins.controls = std::move(controls);
  ins.target = target;
  ins.theta = theta;
  ins.clbit = clbit;
  return ins;
}

}  // namespace

Instruction Instruction::x(int q) { return make(OpType::X, {}, q); }
Instruction Instruction::h(int q) { return make(OpType::H, {}, q); }
Instruction Instruction::ry(int q, double theta) {
  return make(OpType::RY, {}, q, theta);
}
Instruction Instruction::cx(int control, int t) {
  return make(OpType::CX, {control}, t);
}
Instruction Instruction::cz(int control, int t) {
  return make(OpType::CZ, {control}, t);
}
Instruction Instruction::cp(int control, int t, double theta) {
  return make(OpType::CP, {control}, t, theta);
}
Instruction Instruction::mcx(std::vector<int> controls, int t) {
  return make(OpType::MCX, std::move(controls), t);
}
Instruction Instruction::mcry(std::vector<int> controls, int t, double theta) {
  return make(OpType::MCRY, std::move(controls), t, theta);
}
Instruction Instruction::measure(int q, int c) {
  return make(OpType::Measure, {}, q, 0.0, c);
}
Instruction Instruction::reset(int q) { return make(OpType::Reset, {}, q); }

Instruction Instruction::conditioned_on(Condition c) const {
  Instruction out = *this;
  out.condition = std::move(c);
  return out;
}

Instruction controlled_x(std::vector<int> controls, int target) {
  if (controls.empty()) return Instruction::x(target);
  if (controls.size() == 1) return Instruction::cx(controls[0], target);
  return Instruction::mcx(std::move(controls), target);
}

Instruction controlled_ry(std::vector<int> controls, int target,
                          double theta) {
  if (controls.empty()) return Instruction::ry(target, theta);
  return Instruction::mcry(std::move(controls), target, theta);
}

Circuit::Circuit(int num_qubits, int num_clbits)
    : num_qubits_(num_qubits), num_clbits_(num_clbits) {
  if (num_qubits < 1) {
    throw std::invalid_argument("a circuit needs at least one qubit");
  }
  if (num_clbits < 0) {
    throw std::invalid_argument("negative classical bit count");
  }
  clbit_written_.assign(static_cast<std::size_t>(num_clbits), false);
}

const Register* Circuit::find_register(const std::string& name) const {
  auto it = registers_.find(name);
  return it == registers_.end() ? nullptr : &it->second;
}

void Circuit::add_register(const std::string& name, Register reg) {
  if (name.empty() ||
      !std::all_of(name.begin(), name.end(), [](unsigned char ch) {
        return std::isalnum(ch) || ch == '_';
      })) {
    throw std::invalid_argument("register names are [A-Za-z0-9_]+");
  }
  const int limit = reg.classical ? num_clbits_ : num_qubits_;
  if (reg.first < 0 || reg.last < reg.first || reg.last >= limit) {
    throw IndexError("register " + name + " range " +
                     std::to_string(reg.first) + ".." +
                     std::to_string(reg.last) + " outside circuit");
  }
  if (registers_.count(name)) {
    throw std::invalid_argument("register " + name + " already defined");
  }
  registers_.emplace(name, reg);
}

void Circuit::validate(const Instruction& ins) const {
  const auto bad_index = [&](const std::string& what) {
    throw IndexError(std::string(op_name(ins.op)) + ": " + what);
  };

  std::size_t want_controls = 0;
  bool exact = true;
  switch (ins.op) {
    case OpType::X:
    case OpType::H:
    case OpType::RY:
    case OpType::Measure:
    case OpType::Reset:
      want_controls = 0;
      break;
    case OpType::CX:
    case OpType::CZ:
    case OpType::CP:
      want_controls = 1;
      break;
    case OpType::MCX:
    case OpType::MCRY:
      want_controls = 1;
      exact = false;
      break;
  }
  if (exact ? ins.controls.size() != want_controls
            : ins.controls.size() < want_controls) {
    throw std::invalid_argument(std::string(op_name(ins.op)) + ": expected " +
                                (exact ? "" : "at least ") +
                                std::to_string(want_controls) +
                                " control(s), got " +
                                std::to_string(ins.controls.size()));
  }

  if (ins.target < 0 || ins.target >= num_qubits_) {
    bad_index("target qubit " + std::to_string(ins.target) + " outside [0, " +
              std::to_string(num_qubits_ - 1) + "]");
  }
  std::set<int> seen{ins.target};
  for (int c : ins.controls) {
    if (c < 0 || c >= num_qubits_) {
      bad_index("control qubit " + std::to_string(c) + " outside [0, " +
                std::to_string(num_qubits_ - 1) + "]");
    }
    if (!seen.insert(c).second) {
      throw OverlapError(std::string(op_name(ins.op)) +
                         ": operand qubit " + std::to_string(c) + " repeats");
    }
  }

  if (has_angle(ins.op) && !std::isfinite(ins.theta)) {
    throw std::invalid_argument(std::string(op_name(ins.op)) +
                                ": angle must be finite");
  }

  if (ins.op == OpType::Measure) {
    if (ins.clbit < 0 || ins.clbit >= num_clbits_) {
      bad_index("classical bit " + std::to_string(ins.clbit) +
                " outside [0, " + std::to_string(num_clbits_ - 1) + "]");
    }
  } else if (ins.clbit != -1) {
    throw std::invalid_argument(std::string(op_name(ins.op)) +
                                ": only MEASURE writes a classical bit");
  }

  if (ins.condition) {
    if (ins.condition->terms.empty()) {
      throw ConditionError("empty condition");
    }
    for (const auto& [clbit, value] : ins.condition->terms) {
      if (clbit < 0 || clbit >= num_clbits_) {
        bad_index("condition bit " + std::to_string(clbit) + " outside [0, " +
                  std::to_string(num_clbits_ - 1) + "]");
      }
      if (!clbit_written_[static_cast<std::size_t>(clbit)]) {
        throw ConditionError("condition reads c" + std::to_string(clbit) +
                             " before any MEASURE writes it");
      }
      (void)value;
    }
  }
}

void Circuit::append(const Instruction& ins) {
  validate(ins);
  instructions_.push_back(ins);
  if (ins.op == OpType::Measure) {
    clbit_written_[static_cast<std::size_t>(ins.clbit)] = true;
  }
}

std::map<OpType, std::size_t> Circuit::gate_counts() const {
  std::map<OpType, std::size_t> counts;
  for (const auto& ins : instructions_) {
    if (is_unitary(ins.op)) ++counts[ins.op];
  }
  return counts;
}

std::size_t Circuit::num_unitary_gates() const {
  std::size_t total = 0;
  for (const auto& ins : instructions_) {
    if (is_unitary(ins.op)) ++total;
  }
  return total;
}

std::size_t Circuit::depth() const {
  std::vector<std::size_t> qubit_layer(static_cast<std::size_t>(num_qubits_), 0);
  std::vector<std::size_t> clbit_layer(static_cast<std::size_t>(num_clbits_), 0);
  std::size_t depth = 0;
  for (const auto& ins : instructions_) {
    std::size_t layer = 0;
    const auto see_qubit = [&](int q) {
      layer = std::max(layer, qubit_layer[static_cast<std::size_t>(q)]);
    };
    const auto see_clbit = [&](int c) {
      layer = std::max(layer, clbit_layer[static_cast<std::size_t>(c)]);
    };
    see_qubit(ins.target);
    for (int c : ins.controls) see_qubit(c);
    if (ins.op == OpType::Measure) see_clbit(ins.clbit);
    if (ins.condition) {
      for (const auto& [clbit, value] : ins.condition->terms) see_clbit(clbit);
    }
    ++layer;
    qubit_layer[static_cast<std::size_t>(ins.target)] = layer;
    for (int c : ins.controls) qubit_layer[static_cast<std::size_t>(c)] = layer;
    if (ins.op == OpType::Measure) {
      clbit_layer[static_cast<std::size_t>(ins.clbit)] = layer;
    }
    if (ins.condition) {
      for (const auto& [clbit, value] : ins.condition->terms) {
        clbit_layer[static_cast<std::size_t>(clbit)] = layer;
      }
    }
    depth = std::max(depth, layer);
  }
  return depth;
}

std::string format_angle(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string Circuit::emit_text() const {
  std::string out = "CIRCUIT qubits=" + std::to_string(num_qubits_) +
                    " clbits=" + std::to_string(num_clbits_) + "\n";

  // Qubit registers first, each group ordered by first index.
  for (int classical = 0; classical <= 1; ++classical) {
    std::vector<std::pair<std::string, Register>> group;
    for (const auto& [name, reg] : registers_) {
      if (reg.classical == static_cast<bool>(classical)) {
        group.emplace_back(name, reg);
      }
    }
    std::sort(group.begin(), group.end(), [](const auto& a, const auto& b) {
      return std::tie(a.second.first, a.first) <
             std::tie(b.second.first, b.first);
    });
    const char prefix = classical ? 'c' : 'q';
    for (const auto& [name, reg] : group) {
      out += "REG " + name + " " + prefix + std::to_string(reg.first) + ".." +
             prefix + std::to_string(reg.last) + "\n";
    }
  }

  for (const auto& ins : instructions_) {
    out += std::string(op_name(ins.op));
    if (has_angle(ins.op)) {
      out += "(" + format_angle(ins.theta) + ")";
    }
    out += " ";
    if (!ins.controls.empty()) {
      for (std::size_t i = 0; i < ins.controls.size(); ++i) {
        if (i > 0) out += ",";
        out += "q" + std::to_string(ins.controls[i]);
      }
      out += " -> q" + std::to_string(ins.target);
    } else if (ins.op == OpType::Measure) {
      out += "q" + std::to_string(ins.target) + " -> c" +
             std::to_string(ins.clbit);
    } else {
      out += "q" + std::to_string(ins.target);
    }
    if (ins.condition) {
      out += " ? ";
      for (std::size_t i = 0; i < ins.condition->terms.size(); ++i) {
        if (i > 0) out += ",";
        out += "c" + std::to_string(ins.condition->terms[i].first) + "=" +
               (ins.condition->terms[i].second ? "1" : "0");
      }
    }
    out += "\n";
  }
  return out;
}

namespace {

struct LineParser {
  std::string_view text;
  int line;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line, what);
  }
  void skip_spaces() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_spaces();
    return pos >= text.size();
  }
  bool try_consume(char ch) {
    if (pos < text.size() && text[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  }
  void consume(char ch) {
    if (!try_consume(ch)) {
      fail(std::string("expected '") + ch + "'");
    }
  }
  std::string_view take_word() {
    skip_spaces();
    const std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_')) {
      ++pos;
    }
    if (pos == start) fail("expected a word");
    return text.substr(start, pos - start);
  }
  int take_int() {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos == start) fail("expected a number");
    int value = 0;
    const auto rc = std::from_chars(text.data() + start, text.data() + pos, value);
    if (rc.ec != std::errc{}) fail("number out of range");
    return value;
  }
  int take_indexed(char prefix) {
    skip_spaces();
    if (pos >= text.size() || text[pos] != prefix) {
      fail(std::string("expected '") + prefix + "<index>'");
    }
    ++pos;
    return take_int();
  }
  double take_angle() {
    skip_spaces();
    const char* begin = text.data() + pos;
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin) fail("expected an angle");
    pos += static_cast<std::size_t>(end - begin);
    return value;
  }
};

OpType op_from_name(std::string_view name, const LineParser& p) {
  for (OpType op : {OpType::X, OpType::H, OpType::RY, OpType::CX, OpType::CZ,
                    OpType::CP, OpType::MCX, OpType::MCRY, OpType::Measure,
                    OpType::Reset}) {
    if (name == op_name(op)) return op;
  }
  p.fail("unknown instruction '" + std::string(name) + "'");
}

}  // namespace

Circuit parse_text(std::string_view text) {
  std::optional<Circuit> circuit;
  bool saw_instruction = false;
  int line_no = 0;
  std::size_t offset = 0;

  while (offset <= text.size()) {
    const std::size_t eol = text.find('\n', offset);
    std::string_view line = text.substr(
        offset, eol == std::string_view::npos ? text.size() - offset
                                              : eol - offset);
    offset = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    LineParser p{line, line_no};
    if (p.at_end()) continue;

    const std::string_view word = p.take_word();

    if (!circuit) {
      if (word != "CIRCUIT") p.fail("expected CIRCUIT header");
      p.skip_spaces();
      if (p.take_word() != "qubits") p.fail("expected qubits=<count>");
      p.consume('=');
      const int qubits = p.take_int();
      p.skip_spaces();
      if (p.take_word() != "clbits") p.fail("expected clbits=<count>");
      p.consume('=');
      const int clbits = p.take_int();
      if (!p.at_end()) p.fail("trailing text after header");
      try {
        circuit.emplace(qubits, clbits);
      } catch (const std::invalid_argument& e) {
        p.fail(e.what());
      }
      continue;
    }

    if (word == "CIRCUIT") p.fail("duplicate CIRCUIT header");

    if (word == "REG") {
      if (saw_instruction) p.fail("REG lines must precede instructions");
      const std::string name(p.take_word());
      p.skip_spaces();
      if (p.pos >= p.text.size() ||
          (p.text[p.pos] != 'q' && p.text[p.pos] != 'c')) {
        p.fail("expected q<a>..q<b> or c<a>..c<b>");
      }
      const char prefix = p.text[p.pos];
      const int first = p.take_indexed(prefix);
      p.consume('.');
      p.consume('.');
      const int last = p.take_indexed(prefix);
      if (!p.at_end()) p.fail("trailing text after register");
      try {
        circuit->add_register(name, Register{prefix == 'c', first, last});
      } catch (const IndexError& e) {
        throw IndexError("line " + std::to_string(line_no) + ": " + e.what());
      } catch (const std::invalid_argument& e) {
        p.fail(e.what());
      }
      continue;
    }

    // Instruction line.
    saw_instruction = true;
    Instruction ins;
    ins.op = op_from_name(word, p);
    if (p.try_consume('(')) {
      if (!has_angle(ins.op)) p.fail(std::string(word) + " takes no angle");
      ins.theta = p.take_angle();
      p.consume(')');
    } else if (has_angle(ins.op)) {
      p.fail(std::string(word) + " needs an angle");
    }

    std::vector<int> operands{p.take_indexed('q')};
    while (p.try_consume(',')) operands.push_back(p.take_indexed('q'));
    p.skip_spaces();
    if (p.pos + 1 < p.text.size() && p.text[p.pos] == '-' &&
        p.text[p.pos + 1] == '>') {
      p.pos += 2;
      p.skip_spaces();
      if (ins.op == OpType::Measure) {
        if (operands.size() != 1) p.fail("MEASURE takes one qubit");
        ins.target = operands[0];
        ins.clbit = p.take_indexed('c');
      } else {
        ins.controls = std::move(operands);
        ins.target = p.take_indexed('q');
      }
    } else {
      if (operands.size() != 1) p.fail("expected '->' after control list");
      if (ins.op == OpType::Measure) p.fail("MEASURE needs '-> c<index>'");
      ins.target = operands[0];
    }

    p.skip_spaces();
    if (p.try_consume('?')) {
      Condition cond;
      do {
        const int clbit = p.take_indexed('c');
        p.consume('=');
        const int value = p.take_int();
        if (value != 0 && value != 1) p.fail("condition values are 0 or 1");
        cond.terms.emplace_back(clbit, value == 1);
      } while (p.try_consume(','));
      ins.condition = std::move(cond);
    }
    if (!p.at_end()) p.fail("trailing text after instruction");

    try {
      circuit->append(ins);
    } catch (const IndexError& e) {
      throw IndexError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const OverlapError& e) {
      throw OverlapError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ConditionError& e) {
      throw ConditionError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      p.fail(e.what());
    }
  }

  if (!circuit) throw ParseError(line_no, "missing CIRCUIT header");
  return *std::move(circuit);
}

}  // namespace wq
