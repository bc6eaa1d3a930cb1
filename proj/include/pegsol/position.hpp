#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pegsol/board.hpp"
#include "pegsol/pegset.hpp"

namespace pegsol {

// An identified peg. Ids are the digits used in board files.
struct Mark {
  int id = 0;
  int hole = -1;
  friend bool operator==(const Mark&, const Mark&) = default;
};

struct Position {
  PegSet pegs;
  std::vector<Mark> marks;  // sorted by id; every mark sits on a peg

  std::optional<int> mark_at(int hole) const;
  std::optional<int> hole_of(int mark_id) const;

  friend bool operator==(const Position&, const Position&) = default;
};

// Throws Error("bad-position") if a peg lies outside the board, a mark is off
// its peg, or two marks share an id or hole.
void validate_position(const Board& board, const Position& p);

Position full_position(const Board& board);
Position single_vacancy(const Board& board, int hole);

// holes \ pegs. Marked positions have no complement: Error("marked-complement").
Position complement(const Board& board, const Position& p);

// Least image of `p` under the given symmetries, comparing peg sets first and
// mark placement second.
Position canonicalize(const Board& board, const Position& p,
                      std::span<const int> symmetry_indices);
// Same, over the whole symmetry group of the board.
Position canonicalize(const Board& board, const Position& p);

std::vector<Cell> peg_cells(const Board& board, const PegSet& pegs);

}  // namespace pegsol
