#pragma once

#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wqueens/bits.hpp"

namespace wq {

// Board cells use 1-based (row, col) coordinates counted from the top-left
// corner. Circuit qubit indices are 0-based; the conversion happens where
// instructions are emitted, never inside this module.
struct CellCoord {
  int row = 0;
  int col = 0;
  bool operator==(const CellCoord&) const = default;
};

enum class DiagonalDirection { Main, Anti };

struct Diagonal {
  DiagonalDirection direction;
  // Main: row - col, in [-(n-1), n-1]. Anti: row + col, in [2, 2n].
  int offset;
  std::vector<CellCoord> cells;  // ordered by ascending row
};

// Queen column per row, 1-based, index 0 holds row 1's column.
using Solution = std::vector<int>;

enum class ColumnFilter { ColumnOnly, ColumnAndDiagonal };

// Thrown by decode_solution when a bitstring is not a one-queen-per-row,
// one-queen-per-column placement.
class DecodeError : public std::runtime_error {
 public:
  enum class Kind { Row, Column };
  DecodeError(Kind kind, int index, const std::string& what)
      : std::runtime_error(what), kind(kind), index(index) {}
  Kind kind;
  int index;  // offending row or column, 1-based
};

class BoardLayout {
 public:
  // 1 <= n <= 11; n*n must fit the 128-bit basis key used for decoding.
  explicit BoardLayout(int n);

  int n() const { return n_; }
  int num_cells() const { return n_ * n_; }

  // 1-based board qubit index, row-major: (row-1)*n + col.
  int qubit_index(CellCoord cell) const;
  CellCoord cell_at(int qubit) const;  // inverse of qubit_index

  std::vector<int> row_qubits(int row) const;
  std::vector<int> column_qubits(int col) const;

  // All 4n-2 diagonals (2 for n = 1), main direction first, each direction
  // ordered by ascending offset.
  std::vector<Diagonal> enumerate_diagonals() const;

  // Cell pairs of rows r < s that share a diagonal, ordered by the row-r
  // column, anti-diagonal partner before main-diagonal partner.
  std::vector<std::pair<CellCoord, CellCoord>> diagonal_pairs(int r,
                                                              int s) const;

  // Columns still legal for row prefix.size()+1 given the queens already
  // placed in rows 1..prefix.size(). ColumnOnly removes used columns;
  // ColumnAndDiagonal additionally removes diagonal conflicts.
  std::set<int> allowed_columns(std::span<const int> prefix,
                                ColumnFilter filter) const;

  // Board bitstring (bit i-1 = board qubit i) to a queen placement.
  Solution decode_solution(BasisKey board_bits) const;

 private:
  int n_;
};

}  // namespace wq
