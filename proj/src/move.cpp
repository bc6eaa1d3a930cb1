#include "pegsol/move.hpp"

#include <algorithm>

#include "pegsol/error.hpp"

namespace pegsol {

namespace {

std::string describe(const Board& board, const Jump& j) {
  auto name = [&](int h) {
    const Cell c = board.cell(h);
    return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")";
  };
  return name(j.from) + "-" + name(j.over) + "-" + name(j.to);
}

void extend_chains(const Board& board, PegSet pegs, std::vector<int>& path,
                   std::vector<std::vector<int>>& out) {
  const int at = path.back();
  for (int ji : board.jumps_from(at)) {
    const Jump& j = board.jumps()[ji];
    if (!pegs.test(j.over) || pegs.test(j.to)) continue;
    PegSet next = pegs;
    next.reset(j.from);
    next.reset(j.over);
    next.set(j.to);
    path.push_back(j.to);
    out.push_back(path);
    extend_chains(board, next, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<Jump> move_jumps(const Board& board, const Move& move) {
  if (move.path.size() < 2) throw Error("short-move", "a move needs at least two cells");
  std::vector<Jump> out;
  std::vector<int> holes;
  for (const Cell& c : move.path) {
    auto h = board.index_of(c);
    if (!h) {
      throw Error("not-a-hole", "cell (" + std::to_string(c.col) + "," + std::to_string(c.row) +
                                    ") is not on board '" + board.name() + "'");
    }
    holes.push_back(*h);
  }
  for (std::size_t k = 0; k + 1 < holes.size(); ++k) {
    auto j = board.find_jump(holes[k], holes[k + 1]);
    if (!j) {
      throw Error("bad-step", "step " + std::to_string(k) + " of the move is not a jump");
    }
    out.push_back(board.jumps()[*j]);
  }
  return out;
}

std::vector<Move> legal_moves(const Board& board, const Position& p) {
  std::vector<std::vector<int>> chains;
  p.pegs.for_each([&](int h) {
    std::vector<int> path{h};
    const std::size_t first = chains.size();
    extend_chains(board, p.pegs, path, chains);
    std::sort(chains.begin() + static_cast<std::ptrdiff_t>(first), chains.end());
  });
  std::vector<Move> out;
  out.reserve(chains.size());
  for (const auto& c : chains) {
    Move m;
    for (int h : c) m.path.push_back(board.cell(h));
    out.push_back(std::move(m));
  }
  return out;
}

Position apply_move(const Board& board, const Position& p, const Move& move,
                    MarkCapture policy) {
  const std::vector<Jump> jumps = move_jumps(board, move);
  Position q = p;
  std::optional<int> mover_mark = q.mark_at(jumps.front().from);
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    const Jump& j = jumps[k];
    const int idx = static_cast<int>(k);
    if (!q.pegs.test(j.from)) {
      throw IllegalMove("no-peg", "jump " + std::to_string(k + 1) + " " + describe(board, j) +
                                      ": no peg to move", idx, j);
    }
    if (!q.pegs.test(j.over)) {
      throw IllegalMove("nothing-to-jump", "jump " + std::to_string(k + 1) + " " +
                                               describe(board, j) + ": no peg to jump over",
                        idx, j);
    }
    if (q.pegs.test(j.to)) {
      throw IllegalMove("target-occupied", "jump " + std::to_string(k + 1) + " " +
                                               describe(board, j) + ": landing hole is full",
                        idx, j);
    }
    if (auto captured = q.mark_at(j.over)) {
      if (policy == MarkCapture::forbid) {
        throw IllegalMove("marked-capture", "jump " + std::to_string(k + 1) + " " +
                                                describe(board, j) + " captures marked peg " +
                                                std::to_string(*captured),
                          idx, j);
      }
      std::erase_if(q.marks, [&](const Mark& m) { return m.hole == j.over; });
    }
    q.pegs.reset(j.from);
    q.pegs.reset(j.over);
    q.pegs.set(j.to);
  }
  if (mover_mark) {
    for (Mark& m : q.marks) {
      if (m.id == *mover_mark) m.hole = jumps.back().to;
    }
  }
  return q;
}

Position undo_move(const Board& board, const Position& p, const Move& move) {
  const std::vector<Jump> jumps = move_jumps(board, move);
  Position q = p;
  std::optional<int> mover_mark = q.mark_at(jumps.back().to);
  for (std::size_t k = jumps.size(); k-- > 0;) {
    const Jump& j = jumps[k];
    if (!q.pegs.test(j.to) || q.pegs.test(j.over) || q.pegs.test(j.from)) {
      throw IllegalMove("bad-undo", "jump " + std::to_string(k + 1) + " " + describe(board, j) +
                                        " cannot be undone here",
                        static_cast<int>(k), j);
    }
    q.pegs.reset(j.to);
    q.pegs.set(j.over);
    q.pegs.set(j.from);
  }
  if (mover_mark) {
    for (Mark& m : q.marks) {
      if (m.id == *mover_mark) m.hole = jumps.front().from;
    }
  }
  return q;
}

std::vector<Move> group_jumps(const Board& board, const std::vector<Jump>& jumps) {
  std::vector<Move> out;
  for (std::size_t k = 0; k < jumps.size(); ++k) {
    const Jump& j = jumps[k];
    if (k == 0 || jumps[k - 1].to != j.from) {
      out.push_back(Move{{board.cell(j.from)}});
    }
    out.back().path.push_back(board.cell(j.to));
  }
  return out;
}

}  // namespace pegsol
