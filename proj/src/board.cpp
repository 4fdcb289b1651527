#include "wqueens/board.hpp"

#include <algorithm>
#include <cstdlib>

namespace wq {

std::string key_to_string(BasisKey key, int num_bits) {
  std::string out;
  for (int i = 0; i < num_bits; ++i) {
    if (i > 0) out += ' ';
    out += 'q';
    out += std::to_string(i);
    out += '=';
    out += key_test(key, i) ? '1' : '0';
  }
  return out;
}

BoardLayout::BoardLayout(int n) : n_(n) {
  if (n < 1 || n > 11) {
    throw std::invalid_argument("board size must be in [1, 11], got " +
                                std::to_string(n));
  }
}

int BoardLayout::qubit_index(CellCoord cell) const {
  if (cell.row < 1 || cell.row > n_ || cell.col < 1 || cell.col > n_) {
    throw std::out_of_range("cell (" + std::to_string(cell.row) + ", " +
                            std::to_string(cell.col) + ") outside " +
                            std::to_string(n_) + "x" + std::to_string(n_) +
                            " board");
  }
  return (cell.row - 1) * n_ + cell.col;
}

CellCoord BoardLayout::cell_at(int qubit) const {
  if (qubit < 1 || qubit > num_cells()) {
    throw std::out_of_range("board qubit " + std::to_string(qubit) +
                            " outside [1, " + std::to_string(num_cells()) +
                            "]");
  }
  return CellCoord{(qubit - 1) / n_ + 1, (qubit - 1) % n_ + 1};
}

std::vector<int> BoardLayout::row_qubits(int row) const {
  std::vector<int> out;
  out.reserve(n_);
  for (int col = 1; col <= n_; ++col) out.push_back(qubit_index({row, col}));
  return out;
}

std::vector<int> BoardLayout::column_qubits(int col) const {
  std::vector<int> out;
  out.reserve(n_);
  for (int row = 1; row <= n_; ++row) out.push_back(qubit_index({row, col}));
  return out;
}

std::vector<Diagonal> BoardLayout::enumerate_diagonals() const {
  std::vector<Diagonal> out;
  for (int offset = -(n_ - 1); offset <= n_ - 1; ++offset) {
    Diagonal d{DiagonalDirection::Main, offset, {}};
    for (int row = 1; row <= n_; ++row) {
      const int col = row - offset;
      if (col >= 1 && col <= n_) d.cells.push_back({row, col});
    }
    out.push_back(std::move(d));
  }
  for (int offset = 2; offset <= 2 * n_; ++offset) {
    Diagonal d{DiagonalDirection::Anti, offset, {}};
    for (int row = 1; row <= n_; ++row) {
      const int col = offset - row;
      if (col >= 1 && col <= n_) d.cells.push_back({row, col});
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<std::pair<CellCoord, CellCoord>> BoardLayout::diagonal_pairs(
    int r, int s) const {
  if (r < 1 || s > n_ || r >= s) {
    throw std::invalid_argument("diagonal_pairs requires 1 <= r < s <= n, got r=" +
                                std::to_string(r) + " s=" + std::to_string(s));
  }
  const int d = s - r;
  std::vector<std::pair<CellCoord, CellCoord>> out;
  for (int c = 1; c <= n_; ++c) {
    if (c - d >= 1) out.push_back({{r, c}, {s, c - d}});
    if (c + d <= n_) out.push_back({{r, c}, {s, c + d}});
  }
  return out;
}

std::set<int> BoardLayout::allowed_columns(std::span<const int> prefix,
                                           ColumnFilter filter) const {
  if (static_cast<int>(prefix.size()) >= n_) {
    throw std::invalid_argument("prefix already covers every row");
  }
  std::set<int> used;
  for (int col : prefix) {
    if (col < 1 || col > n_) {
      throw std::out_of_range("prefix column " + std::to_string(col) +
                              " outside [1, " + std::to_string(n_) + "]");
    }
    if (!used.insert(col).second) {
      throw std::invalid_argument("prefix repeats column " +
                                  std::to_string(col));
    }
  }
  const int next_row = static_cast<int>(prefix.size()) + 1;
  std::set<int> out;
  for (int c = 1; c <= n_; ++c) {
    if (used.count(c)) continue;
    if (filter == ColumnFilter::ColumnAndDiagonal) {
      bool clash = false;
      for (int r = 1; r < next_row; ++r) {
        if (std::abs(c - prefix[r - 1]) == next_row - r) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
    }
    out.insert(c);
  }
  return out;
}

Solution BoardLayout::decode_solution(BasisKey board_bits) const {
  Solution cols(n_, 0);
  for (int row = 1; row <= n_; ++row) {
    int count = 0;
    for (int col = 1; col <= n_; ++col) {
      if (key_test(board_bits, qubit_index({row, col}) - 1)) {
        ++count;
        cols[row - 1] = col;
      }
    }
    if (count != 1) {
      throw DecodeError(DecodeError::Kind::Row, row,
                        "row " + std::to_string(row) + " holds " +
                            std::to_string(count) + " queens");
    }
  }
  std::vector<int> per_column(n_ + 1, 0);
  for (int col : cols) ++per_column[col];
  for (int col = 1; col <= n_; ++col) {
    if (per_column[col] != 1) {
      throw DecodeError(DecodeError::Kind::Column, col,
                        "column " + std::to_string(col) + " holds " +
                            std::to_string(per_column[col]) + " queens");
    }
  }
  return cols;
}

}  // namespace wq
