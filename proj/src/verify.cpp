#include <algorithm>

#include "pegsol/error.hpp"
#include "pegsol/notation.hpp"
#include "pegsol/solver.hpp"

namespace pegsol {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::solved: return "solved";
    case Outcome::unsolvable: return "unsolvable";
    case Outcome::exhausted: return "exhausted";
  }
  return "";
}

VerifyReport verify_solution(const Problem& p, const std::vector<Move>& moves) {
  const Board& b = *p.board;
  for (const Move& m : moves) {
    for (const Cell& c : m.path) {
      if (!b.contains(c)) {
        throw Error("not-a-hole", "cell " + format_cell(c) + " is not on board '" + b.name() + "'");
      }
    }
  }

  VerifyReport r;
  Position pos = p.start;
  for (const Mark& m : pos.marks) r.mark_paths[m.id].push_back(b.cell(m.hole));
  for (std::size_t k = 0; k < moves.size(); ++k) {
    const Move& m = moves[k];
    const int mover = *b.index_of(m.origin());
    if (p.marks_immobile && k + 1 < moves.size() && pos.mark_at(mover)) {
      r.violations.push_back("marked peg " + std::to_string(*pos.mark_at(mover)) + " moves in move " +
                             std::to_string(k + 1) + ", before the final move");
    }
    try {
      pos = apply_move(b, pos, m, MarkCapture::forbid);
    } catch (const IllegalMove& e) {
      r.legal = false;
      r.illegal_move = static_cast<int>(k);
      r.illegal_jump = e.jump_index();
      r.error = e.code() + ": move " + std::to_string(k + 1) + ", " + e.what();
      break;
    } catch (const Error& e) {
      if (e.code() != "bad-step" && e.code() != "short-move") throw;
      r.legal = false;
      r.illegal_move = static_cast<int>(k);
      r.error = e.code() + ": move " + std::to_string(k + 1) + ", " + e.what();
      break;
    }
    r.sweeps.push_back(m.sweep());
    for (const Mark& mk : pos.marks) r.mark_paths[mk.id].push_back(b.cell(mk.hole));
  }
  r.move_count = static_cast<int>(r.sweeps.size());
  r.max_sweep = r.sweeps.empty() ? 0 : *std::max_element(r.sweeps.begin(), r.sweeps.end());
  r.final_sweep = r.sweeps.empty() ? 0 : r.sweeps.back();
  r.final_position = pos;
  r.finish_met = r.legal && finish_met(p, pos);

  if (p.max_moves && r.move_count > *p.max_moves) {
    r.violations.push_back(std::to_string(r.move_count) + " moves exceed the limit of " +
                           std::to_string(*p.max_moves));
  }
  if (p.min_final_sweep && r.final_sweep < *p.min_final_sweep) {
    r.violations.push_back("final sweep " + std::to_string(r.final_sweep) + " is shorter than " +
                           std::to_string(*p.min_final_sweep));
  }
  r.constraints_met = r.violations.empty();
  return r;
}

Problem reversed_problem(const Problem& p) {
  if (!p.start.marks.empty() || !p.finish_marks.empty()) {
    throw Error("marked-complement", "problems with marked pegs cannot be time-reversed");
  }
  Problem q = p;
  q.id = p.id.empty() ? "" : p.id + "-reversed";
  q.start = Position{p.board->full() ^ p.finish_pegs, {}};
  q.finish_pegs = p.board->full() ^ p.start.pegs;
  q.min_final_sweep.reset();
  return q;
}

std::vector<Move> time_reverse(const Board& board, const std::vector<Move>& moves) {
  std::vector<Jump> jumps;
  for (const Move& m : moves) {
    for (const Jump& j : move_jumps(board, m)) jumps.push_back(j);
  }
  std::reverse(jumps.begin(), jumps.end());
  return group_jumps(board, jumps);
}

}  // namespace pegsol
