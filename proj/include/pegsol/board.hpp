#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pegsol/pegset.hpp"

namespace pegsol {

// A lattice point. Columns grow to the right, rows grow downwards (row 0 is
// the top rank). Both may be negative.
struct Cell {
  int col = 0;
  int row = 0;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
  // Row-major order; this is also the hole ordering used by Board.
  friend constexpr std::strong_ordering operator<=>(const Cell& a, const Cell& b) {
    if (auto c = a.row <=> b.row; c != 0) return c;
    return a.col <=> b.col;
  }
};

struct JumpRule {
  bool diagonal = false;
  friend bool operator==(const JumpRule&, const JumpRule&) = default;
};

// One jump as hole indices: the peg on `from` hops over `over` into `to`.
struct Jump {
  int from = -1;
  int over = -1;
  int to = -1;
  friend bool operator==(const Jump&, const Jump&) = default;
};

// A lattice isometry restricted to the board. `transform` encodes the
// square-lattice map: bit 2 swaps axes, bit 0 negates columns, bit 1 negates
// rows (applied in that order, then translated back onto the bounding box).
struct Symmetry {
  int transform = 0;
  std::vector<int> perm;  // hole index -> image hole index

  bool is_identity() const { return transform == 0; }
};

class Board {
 public:
  const std::string& name() const { return name_; }
  const JumpRule& rule() const { return rule_; }
  int size() const { return static_cast<int>(holes_.size()); }

  std::span<const Cell> holes() const { return holes_; }
  const Cell& cell(int hole) const { return holes_[hole]; }
  std::optional<int> index_of(Cell c) const;
  bool contains(Cell c) const { return index_of(c).has_value(); }

  std::span<const Jump> jumps() const { return jumps_; }
  // Jumps whose source is `hole`, in direction order.
  std::span<const int> jumps_from(int hole) const;
  // Jump index for from->to, if those holes are one jump apart.
  std::optional<int> find_jump(int from, int to) const;

  std::span<const Symmetry> symmetries() const { return symmetries_; }

  PegSet full() const { return full_; }

  // Image of a peg set under symmetry `k` (index into symmetries()).
  PegSet transform(const PegSet& s, int k) const;

  int min_col() const { return min_col_; }
  int max_col() const { return max_col_; }
  int min_row() const { return min_row_; }
  int max_row() const { return max_row_; }

 private:
  friend Board build_board(std::vector<Cell> holes, JumpRule rule, std::string name);

  std::string name_;
  JumpRule rule_;
  std::vector<Cell> holes_;
  std::vector<int> grid_;  // bounding box, -1 where there is no hole
  int min_col_ = 0, max_col_ = 0, min_row_ = 0, max_row_ = 0;
  std::vector<Jump> jumps_;
  std::vector<std::vector<int>> jumps_from_;
  std::vector<Symmetry> symmetries_;
  // Per symmetry: 16 byte lanes x 256 values -> image, for fast transforms.
  std::vector<std::array<std::array<PegSet, 256>, 16>> byte_images_;
  PegSet full_;
};

// Builds a board from an arbitrary hole set. Throws Error("empty-board") for
// an empty set, Error("too-many-holes") above kMaxHoles, and
// Error("duplicate-hole") when a cell repeats.
Board build_board(std::vector<Cell> holes, JumpRule rule, std::string name);

// A 3x3 centre with 3-wide arms of length n1 (top), n2 (right), n3 (bottom)
// and n4 (left). The centre's top-left hole sits at (n4, n1).
Board generalized_cross(int n1, int n2, int n3, int n4);

// Table-style symmetry label: "Square", "Rectangular", "Diagonal",
// "Lateral", "Rotational", "Half-turn" or "" for none.
std::string symmetry_name(const Board& board);

}  // namespace pegsol
