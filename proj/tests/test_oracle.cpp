#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "wqueens/board.hpp"
#include "wqueens/oracle.hpp"

using namespace wq;

TEST_CASE("solution counts for n = 1..8") {
  const std::size_t expected[] = {1, 0, 0, 2, 10, 4, 40, 92};
  for (int n = 1; n <= 8; ++n) {
    CHECK(oracle::count_solutions(n) == expected[n - 1]);
  }
}

TEST_CASE("solver output is sorted, duplicate-free, and valid") {
  for (int n = 1; n <= 7; ++n) {
    const auto solutions = oracle::solve_classical(n);
    CHECK(std::is_sorted(solutions.begin(), solutions.end()));
    CHECK(std::adjacent_find(solutions.begin(), solutions.end()) ==
          solutions.end());
    for (const auto& solution : solutions) {
      CHECK(oracle::is_valid_solution(n, solution));
    }
  }
}

TEST_CASE("known boards") {
  CHECK(oracle::solve_classical(1) == std::vector<Solution>{{1}});
  CHECK(oracle::solve_classical(2).empty());
  CHECK(oracle::solve_classical(4) ==
        std::vector<Solution>{{2, 4, 1, 3}, {3, 1, 4, 2}});
  CHECK(oracle::solve_classical(5).front() == Solution{1, 3, 5, 2, 4});
  CHECK_THROWS_AS(oracle::solve_classical(0), std::invalid_argument);
}

TEST_CASE("is_valid_solution rejects each failure mode") {
  CHECK(oracle::is_valid_solution(4, {2, 4, 1, 3}));
  CHECK_FALSE(oracle::is_valid_solution(4, {2, 4, 1}));       // wrong length
  CHECK_FALSE(oracle::is_valid_solution(4, {2, 4, 2, 3}));    // column reuse
  CHECK_FALSE(oracle::is_valid_solution(2, {1, 2}));          // diagonal
  CHECK_FALSE(oracle::is_valid_solution(4, {0, 4, 1, 3}));    // out of range
  CHECK_FALSE(oracle::is_valid_solution(4, {5, 4, 1, 3}));
}

TEST_CASE("candidate_columns matches hand-checked sets") {
  const std::vector<int> empty;
  CHECK(oracle::candidate_columns(4, empty) == std::set<int>{1, 2, 3, 4});
  const std::vector<int> two{2};
  CHECK(oracle::candidate_columns(4, two) == std::set<int>{4});
  const std::vector<int> stuck{1, 3};
  CHECK(oracle::candidate_columns(4, stuck).empty());
  const std::vector<int> full{1, 2};
  CHECK_THROWS_AS(oracle::candidate_columns(2, full), std::invalid_argument);
  const std::vector<int> repeated{1, 1};
  CHECK_THROWS_AS(oracle::candidate_columns(4, repeated),
                  std::invalid_argument);
}

TEST_CASE("search space sizes") {
  const auto n4 = oracle::search_space_sizes(4);
  CHECK(oracle::to_decimal_string(n4.all_placements) == "65536");
  CHECK(oracle::to_decimal_string(n4.one_queen_per_row) == "256");
  CHECK(oracle::to_decimal_string(n4.row_and_column_valid) == "24");

  const auto n2 = oracle::search_space_sizes(2);
  CHECK(n2.all_placements == 16);
  CHECK(n2.one_queen_per_row == 4);
  CHECK(n2.row_and_column_valid == 2);

  const auto n1 = oracle::search_space_sizes(1);
  CHECK(n1.all_placements == 2);
  CHECK(n1.one_queen_per_row == 1);
  CHECK(n1.row_and_column_valid == 1);

  // 2^121 only fits because the counters are 128-bit.
  const auto n11 = oracle::search_space_sizes(11);
  CHECK(oracle::to_decimal_string(n11.all_placements) ==
        "2658455991569831745807614120560689152");
  CHECK(oracle::to_decimal_string(n11.row_and_column_valid) == "39916800");

  CHECK_THROWS_AS(oracle::search_space_sizes(12), std::overflow_error);
  CHECK_THROWS_AS(oracle::search_space_sizes(0), std::invalid_argument);
}

TEST_CASE("to_decimal_string handles zero and big values") {
  CHECK(oracle::to_decimal_string(0) == "0");
  CHECK(oracle::to_decimal_string(1) == "1");
  CHECK(oracle::to_decimal_string(static_cast<unsigned __int128>(1) << 100) ==
        "1267650600228229401496703205376");
}

TEST_CASE("branch probability follows the allowed-set products") {
  const auto p1 = oracle::backtracking_branch_probability(1, {1});
  CHECK(p1.numerator == 1);
  CHECK(p1.denominator == 1);
  CHECK(p1.value() == 1.0);

  // Row 1 has 4 candidates, rows 2 and 3 are forced.
  const auto p4a = oracle::backtracking_branch_probability(4, {2, 4, 1, 3});
  CHECK(p4a.denominator == 4);
  const auto p4b = oracle::backtracking_branch_probability(4, {3, 1, 4, 2});
  CHECK(p4b.denominator == 4);

  CHECK_THROWS_AS(oracle::backtracking_branch_probability(4, {1, 2, 3, 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::backtracking_branch_probability(4, {2, 4, 1}),
                  std::invalid_argument);
}

TEST_CASE("branch probabilities recomputed through the board module") {
  for (int n = 1; n <= 6; ++n) {
    const BoardLayout board(n);
    for (const auto& solution : oracle::solve_classical(n)) {
      std::uint64_t denominator = 1;
      for (int row = 1; row <= n - 1; ++row) {
        const std::span<const int> prefix(solution.data(),
                                          static_cast<std::size_t>(row - 1));
        denominator *=
            board.allowed_columns(prefix, ColumnFilter::ColumnAndDiagonal)
                .size();
      }
      const auto p = oracle::backtracking_branch_probability(n, solution);
      CHECK(p.numerator == 1);
      CHECK(p.denominator == denominator);
    }
  }
}
