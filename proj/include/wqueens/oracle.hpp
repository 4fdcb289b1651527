#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "wqueens/board.hpp"

namespace wq::oracle {

// Reference N-Queens solver, depth-first over rows with column and diagonal
// bitmasks. Every quantum result in this project is judged against it.
std::vector<Solution> solve_classical(int n);

std::size_t count_solutions(int n);

bool is_valid_solution(int n, const Solution& solution);

// Candidate columns for the next row, derived from the solver's bitmask
// state. Kept independent of BoardLayout::allowed_columns on purpose so the
// two derivations can be checked against each other.
std::set<int> candidate_columns(int n, std::span<const int> prefix);

struct SearchSpaceSizes {
  unsigned __int128 all_placements;          // 2^(n*n)
  unsigned __int128 one_queen_per_row;       // n^n
  unsigned __int128 row_and_column_valid;    // n!
};

// Throws std::overflow_error once 2^(n*n) leaves 128 bits (n >= 12).
SearchSpaceSizes search_space_sizes(int n);

std::string to_decimal_string(unsigned __int128 value);

// Exact probability that the backtracking circuit's state reaches a given
// solution: product over rows 1..n-1 of 1/|candidates for that row|.
struct BranchProbability {
  std::uint64_t numerator = 1;
  std::uint64_t denominator = 1;
  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  bool operator==(const BranchProbability&) const = default;
};

BranchProbability backtracking_branch_probability(int n,
                                                  const Solution& solution);

}  // namespace wq::oracle
