#pragma once

#include <string>
#include <vector>

#include "pegsol/board.hpp"
#include "pegsol/error.hpp"
#include "pegsol/position.hpp"

namespace pegsol {

// A single peg's chain of jumps. path[0] is the origin, every later cell is a
// landing point. The path may revisit cells; only jumped-over pegs vanish.
struct Move {
  std::vector<Cell> path;

  int sweep() const { return static_cast<int>(path.size()) - 1; }
  const Cell& origin() const { return path.front(); }
  const Cell& destination() const { return path.back(); }

  friend bool operator==(const Move&, const Move&) = default;
  friend auto operator<=>(const Move&, const Move&) = default;
};

// The jumps of a move as hole indices. Error("not-a-hole") when a path cell
// is off the board, Error("bad-step") when two consecutive cells are not a
// jump apart under the board's rule.
std::vector<Jump> move_jumps(const Board& board, const Move& move);

// Every legal move, including every proper prefix of a longer chain. Sorted by
// origin hole index, then by path.
std::vector<Move> legal_moves(const Board& board, const Position& p);

enum class MarkCapture { allow, forbid };

// Thrown by apply_move/undo_move. `jump_index` is the offending jump within
// the move (0-based).
class IllegalMove : public Error {
 public:
  IllegalMove(std::string code, const std::string& msg, int jump_index, Jump jump)
      : Error(std::move(code), msg), jump_index_(jump_index), jump_(jump) {}
  int jump_index() const { return jump_index_; }
  const Jump& jump() const { return jump_; }

 private:
  int jump_index_;
  Jump jump_;
};

// Plays `move`. Marks on the moving peg follow it; capturing a marked peg
// removes the mark, or throws IllegalMove("marked-capture") under
// MarkCapture::forbid.
Position apply_move(const Board& board, const Position& p, const Move& move,
                    MarkCapture policy = MarkCapture::forbid);

// Exact inverse of apply_move. Captured marks are not restored, so undoing a
// move that captured a mark is only exact for the peg set.
Position undo_move(const Board& board, const Position& p, const Move& move);

// Splits a jump sequence into moves: a jump continues the current move when
// it starts where the previous jump landed.
std::vector<Move> group_jumps(const Board& board, const std::vector<Jump>& jumps);

}  // namespace pegsol
