#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "wqueens/circuit.hpp"
#include "wqueens/simulator.hpp"
#include "wqueens/wstate.hpp"

using namespace wq;

namespace {

SparseState apply_all(const std::vector<Instruction>& instructions,
                      SparseState state = SparseState::zero_state()) {
  for (const auto& ins : instructions) {
    state = apply_gate(state, ins);
  }
  return state;
}

std::size_t depth_of(const std::vector<Instruction>& instructions,
                     int num_qubits) {
  Circuit c(num_qubits, 0);
  for (const auto& ins : instructions) c.append(ins);
  return c.depth();
}

}  // namespace

TEST_CASE("both strategies spread one excitation uniformly") {
  for (int n = 1; n <= 10; ++n) {
    std::vector<int> targets(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) targets[static_cast<std::size_t>(i)] = i;
    const double expected = 1.0 / std::sqrt(static_cast<double>(n));

    for (WStrategy strategy : {WStrategy::Chain, WStrategy::Tree}) {
      CAPTURE(n);
      const SparseState state = apply_all(build_w(targets, strategy));
      REQUIRE(state.amplitudes.size() == static_cast<std::size_t>(n));
      CHECK(state.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
      for (int i = 0; i < n; ++i) {
        const auto it = state.amplitudes.find(BasisKey{1} << i);
        REQUIRE(it != state.amplitudes.end());
        CHECK(std::abs(it->second.real() - expected) < 1e-10);
        CHECK(std::abs(it->second.imag()) < 1e-15);
      }
    }
  }
}

TEST_CASE("the two strategies build the same state") {
  for (int n = 2; n <= 10; ++n) {
    std::vector<int> targets(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) targets[static_cast<std::size_t>(i)] = i;
    const SparseState chain = apply_all(build_w(targets, WStrategy::Chain));
    const SparseState tree = apply_all(build_w(targets, WStrategy::Tree));
    REQUIRE(chain.amplitudes.size() == tree.amplitudes.size());
    for (const auto& [key, amp] : chain.amplitudes) {
      const auto it = tree.amplitudes.find(key);
      REQUIRE(it != tree.amplitudes.end());
      CHECK(std::abs(amp - it->second) < 1e-10);
    }
  }
}

TEST_CASE("a single target degenerates to X") {
  const std::vector<int> one{5};
  CHECK(build_w(one, WStrategy::Chain) ==
        std::vector<Instruction>{Instruction::x(5)});
  CHECK(build_w(one, WStrategy::Tree) ==
        std::vector<Instruction>{Instruction::x(5)});

  const std::vector<int> controls{0, 1};
  CHECK(build_controlled_w(controls, one, WStrategy::Tree) ==
        std::vector<Instruction>{Instruction::mcx({0, 1}, 5)});
  const std::vector<int> single_control{3};
  CHECK(build_controlled_w(single_control, one, WStrategy::Chain) ==
        std::vector<Instruction>{Instruction::cx(3, 5)});
}

TEST_CASE("targets need not be contiguous or ordered") {
  const std::vector<int> targets{5, 2, 7};
  for (WStrategy strategy : {WStrategy::Chain, WStrategy::Tree}) {
    const SparseState state = apply_all(build_w(targets, strategy));
    REQUIRE(state.amplitudes.size() == 3);
    for (int q : targets) {
      const auto it = state.amplitudes.find(BasisKey{1} << q);
      REQUIRE(it != state.amplitudes.end());
      CHECK(std::abs(it->second.real() - 1.0 / std::sqrt(3.0)) < 1e-10);
    }
  }
}

TEST_CASE("chain depth is exactly 2n-1 and tree stays within its bound") {
  for (int n = 1; n <= 10; ++n) {
    std::vector<int> targets(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) targets[static_cast<std::size_t>(i)] = i;
    CAPTURE(n);

    const std::size_t chain_depth =
        depth_of(build_w(targets, WStrategy::Chain), n);
    const std::size_t tree_depth =
        depth_of(build_w(targets, WStrategy::Tree), n);
    CHECK(chain_depth == 2 * static_cast<std::size_t>(n) - 1);
    CHECK(chain_depth ==
          w_depth_bound(static_cast<std::size_t>(n), WStrategy::Chain));
    CHECK(tree_depth <=
          w_depth_bound(static_cast<std::size_t>(n), WStrategy::Tree));
    if (n >= 4) CHECK(tree_depth < chain_depth);
  }
}

TEST_CASE("tree depth bound is 1 + 2*ceil(log2 n)") {
  CHECK(w_depth_bound(1, WStrategy::Tree) == 1);
  CHECK(w_depth_bound(2, WStrategy::Tree) == 3);
  CHECK(w_depth_bound(3, WStrategy::Tree) == 5);
  CHECK(w_depth_bound(4, WStrategy::Tree) == 5);
  CHECK(w_depth_bound(5, WStrategy::Tree) == 7);
  CHECK(w_depth_bound(8, WStrategy::Tree) == 7);
  CHECK(w_depth_bound(9, WStrategy::Tree) == 9);
  CHECK(w_depth_bound(1, WStrategy::Chain) == 1);
  CHECK(w_depth_bound(10, WStrategy::Chain) == 19);
  CHECK_THROWS_AS(w_depth_bound(0, WStrategy::Tree), std::invalid_argument);
}

TEST_CASE("controlled W touches only branches with all controls set") {
  const std::vector<int> controls{0};
  const std::vector<int> targets{1, 2, 3};
  for (WStrategy strategy : {WStrategy::Chain, WStrategy::Tree}) {
    SparseState state = SparseState::zero_state();
    state = apply_gate(state, Instruction::h(0));
    const Amplitude before_w = state.amplitudes.at(BasisKey{0});
    state = apply_all(build_controlled_w(controls, targets, strategy),
                      std::move(state));

    // Control-off branch: |0000> keeps its post-H amplitude bit for bit.
    REQUIRE(state.amplitudes.size() == 4);
    const auto off = state.amplitudes.find(BasisKey{0});
    REQUIRE(off != state.amplitudes.end());
    CHECK(off->second == before_w);

    for (int q : targets) {
      const auto it = state.amplitudes.find((BasisKey{1} << q) | BasisKey{1});
      REQUIRE(it != state.amplitudes.end());
      CHECK(std::abs(it->second.real() -
                     1.0 / std::sqrt(2.0) / std::sqrt(3.0)) < 1e-10);
    }
  }
}

TEST_CASE("controlled W with several controls requires them all") {
  const std::vector<int> controls{0, 1};
  const std::vector<int> targets{2, 3};

  SparseState armed = SparseState::zero_state();
  armed = apply_gate(armed, Instruction::x(0));
  armed = apply_gate(armed, Instruction::x(1));
  armed = apply_all(build_controlled_w(controls, targets, WStrategy::Tree),
                    std::move(armed));
  REQUIRE(armed.amplitudes.size() == 2);
  CHECK(std::abs(armed.amplitudes.at(BasisKey{0b0111}).real() -
                 1.0 / std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(armed.amplitudes.at(BasisKey{0b1011}).real() -
                 1.0 / std::sqrt(2.0)) < 1e-10);

  SparseState idle = SparseState::zero_state();
  idle = apply_gate(idle, Instruction::x(0));
  idle = apply_all(build_controlled_w(controls, targets, WStrategy::Tree),
                   std::move(idle));
  REQUIRE(idle.amplitudes.size() == 1);
  CHECK(idle.amplitudes.at(BasisKey{0b01}) == Amplitude{1.0});
}

TEST_CASE("operand validation") {
  const std::vector<int> empty;
  const std::vector<int> targets{1, 2};
  const std::vector<int> repeated{1, 1};
  const std::vector<int> overlap{2};
  CHECK_THROWS_AS(build_w(empty, WStrategy::Chain), std::invalid_argument);
  CHECK_THROWS_AS(build_w(repeated, WStrategy::Tree), std::invalid_argument);
  CHECK_THROWS_AS(build_controlled_w(overlap, targets, WStrategy::Chain),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_controlled_w(repeated, targets, WStrategy::Chain),
                  std::invalid_argument);
  CHECK(build_controlled_w(empty, targets, WStrategy::Chain) ==
        build_w(targets, WStrategy::Chain));
}
