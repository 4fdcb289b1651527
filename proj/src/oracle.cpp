#include "wqueens/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace wq::oracle {

namespace {

void check_n(int n) {
  if (n < 1) {
    throw std::invalid_argument("board size must be at least 1, got " +
                                std::to_string(n));
  }
}

// Masks index columns 0-based; diag = row+col, anti = row-col+n-1.
void dfs(int n, int row, std::uint64_t cols, std::uint64_t diag,
         std::uint64_t anti, Solution& current, std::vector<Solution>& out) {
  if (row == n) {
    out.push_back(current);
    return;
  }
  for (int col = 0; col < n; ++col) {
    const std::uint64_t c = std::uint64_t{1} << col;
    const std::uint64_t d = std::uint64_t{1} << (row + col);
    const std::uint64_t a = std::uint64_t{1} << (row - col + n - 1);
    if ((cols & c) || (diag & d) || (anti & a)) continue;
    current.push_back(col + 1);
    dfs(n, row + 1, cols | c, diag | d, anti | a, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Solution> solve_classical(int n) {
  check_n(n);
  std::vector<Solution> out;
  Solution current;
  current.reserve(n);
  dfs(n, 0, 0, 0, 0, current, out);
  return out;  // ascending column order in dfs makes this lexicographic
}

std::size_t count_solutions(int n) { return solve_classical(n).size(); }

bool is_valid_solution(int n, const Solution& solution) {
  if (static_cast<int>(solution.size()) != n) return false;
  for (int r = 0; r < n; ++r) {
    if (solution[r] < 1 || solution[r] > n) return false;
    for (int s = r + 1; s < n; ++s) {
      if (solution[r] == solution[s]) return false;
      if (std::abs(solution[r] - solution[s]) == s - r) return false;
    }
  }
  return true;
}

std::set<int> candidate_columns(int n, std::span<const int> prefix) {
  check_n(n);
  if (static_cast<int>(prefix.size()) >= n) {
    throw std::invalid_argument("prefix already covers every row");
  }
  std::uint64_t cols = 0, diag = 0, anti = 0;
  for (int row = 0; row < static_cast<int>(prefix.size()); ++row) {
    const int col = prefix[row] - 1;
    if (col < 0 || col >= n || (cols & (std::uint64_t{1} << col))) {
      throw std::invalid_argument("prefix is not a distinct in-range column list");
    }
    cols |= std::uint64_t{1} << col;
    diag |= std::uint64_t{1} << (row + col);
    anti |= std::uint64_t{1} << (row - col + n - 1);
  }
  const int row = static_cast<int>(prefix.size());
  std::set<int> out;
  for (int col = 0; col < n; ++col) {
    const std::uint64_t c = std::uint64_t{1} << col;
    const std::uint64_t d = std::uint64_t{1} << (row + col);
    const std::uint64_t a = std::uint64_t{1} << (row - col + n - 1);
    if ((cols & c) || (diag & d) || (anti & a)) continue;
    out.insert(col + 1);
  }
  return out;
}

SearchSpaceSizes search_space_sizes(int n) {
  check_n(n);
  if (n > 11) {
    throw std::overflow_error("2^(n*n) exceeds 128 bits for n = " +
                              std::to_string(n));
  }
  SearchSpaceSizes sizes{};
  sizes.all_placements = static_cast<unsigned __int128>(1) << (n * n);
  sizes.one_queen_per_row = 1;
  sizes.row_and_column_valid = 1;
  for (int i = 1; i <= n; ++i) {
    sizes.one_queen_per_row *= static_cast<unsigned>(n);
    sizes.row_and_column_valid *= static_cast<unsigned>(i);
  }
  return sizes;
}

std::string to_decimal_string(unsigned __int128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out += static_cast<char>('0' + static_cast<int>(value % 10));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

BranchProbability backtracking_branch_probability(int n,
                                                  const Solution& solution) {
  if (!is_valid_solution(n, solution)) {
    throw std::invalid_argument("not a valid n-queens solution for n = " +
                                std::to_string(n));
  }
  BranchProbability p;
  for (int row = 1; row <= n - 1; ++row) {
    std::span<const int> prefix(solution.data(), row - 1);
    p.denominator *= candidate_columns(n, prefix).size();
  }
  return p;
}

}  // namespace wq::oracle
