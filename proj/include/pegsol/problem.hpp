#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pegsol/board.hpp"
#include "pegsol/position.hpp"

namespace pegsol {

// A start position plus an exact finish requirement: the finish pegs are
// precisely `finish_pegs` (every other hole empty) and each finish mark sits
// on its hole. Marked pegs may never be captured.
struct Problem {
  std::string id;
  std::string board_id;  // catalog id of the board, when known
  std::shared_ptr<const Board> board;
  Position start;
  PegSet finish_pegs;
  std::vector<Mark> finish_marks;  // sorted by id, each hole in finish_pegs

  std::optional<int> max_moves;
  std::optional<int> min_final_sweep;
  // A marked peg may not jump except as the mover of the final move.
  bool marks_immobile = false;
};

// Throws Error("bad-problem") when the start is invalid, a finish mark is
// unknown or off the finish pegs, or the finish has more pegs than the start.
void validate_problem(const Problem& p);

bool finish_met(const Problem& p, const Position& pos);

// Vacate `vacancy`, finish with a lone peg on `survivor`.
Problem single_survivor_problem(std::shared_ptr<const Board> board, int vacancy, int survivor);
inline Problem complement_problem(std::shared_ptr<const Board> board, int hole) {
  return single_survivor_problem(std::move(board), hole, hole);
}

// The problem restarted from `pos`, keeping finish and constraints. A move
// limit is not adjusted.
Problem with_start(const Problem& p, Position pos);

}  // namespace pegsol
