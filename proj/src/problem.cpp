#include "pegsol/problem.hpp"

#include "pegsol/error.hpp"

namespace pegsol {

void validate_problem(const Problem& p) {
  if (!p.board) throw Error("bad-problem", "problem '" + p.id + "' has no board");
  validate_position(*p.board, p.start);
  if (!p.board->full().contains_all(p.finish_pegs)) {
    throw Error("bad-problem", "finish of '" + p.id + "' uses cells that are not holes");
  }
  for (const Mark& m : p.finish_marks) {
    if (!p.start.hole_of(m.id)) {
      throw Error("bad-problem", "finish mark " + std::to_string(m.id) + " is not placed at the start");
    }
    if (m.hole < 0 || !p.finish_pegs.test(m.hole)) {
      throw Error("bad-problem", "finish mark " + std::to_string(m.id) + " is not on a finish peg");
    }
  }
  if (p.finish_pegs.count() > p.start.pegs.count()) {
    throw Error("bad-problem", "finish of '" + p.id + "' has more pegs than the start");
  }
  if (p.finish_pegs.count() < static_cast<int>(p.start.marks.size())) {
    throw Error("bad-problem", "marks cannot all survive in '" + p.id + "'");
  }
}

bool finish_met(const Problem& p, const Position& pos) {
  if (pos.pegs != p.finish_pegs) return false;
  for (const Mark& m : p.finish_marks) {
    if (pos.hole_of(m.id) != m.hole) return false;
  }
  return true;
}

Problem single_survivor_problem(std::shared_ptr<const Board> board, int vacancy, int survivor) {
  Problem p;
  p.board_id = board->name();
  p.start = single_vacancy(*board, vacancy);
  p.finish_pegs = PegSet::single(survivor);
  p.board = std::move(board);
  return p;
}

Problem with_start(const Problem& p, Position pos) {
  Problem q = p;
  q.start = std::move(pos);
  return q;
}

}  // namespace pegsol
