#include "pegsol/position.hpp"

#include <algorithm>
#include <numeric>

#include "pegsol/error.hpp"

namespace pegsol {

std::optional<int> Position::mark_at(int hole) const {
  for (const Mark& m : marks) {
    if (m.hole == hole) return m.id;
  }
  return std::nullopt;
}

std::optional<int> Position::hole_of(int mark_id) const {
  for (const Mark& m : marks) {
    if (m.id == mark_id) return m.hole;
  }
  return std::nullopt;
}

void validate_position(const Board& board, const Position& p) {
  if (!board.full().contains_all(p.pegs)) {
    throw Error("bad-position", "position has pegs outside board '" + board.name() + "'");
  }
  for (std::size_t i = 0; i < p.marks.size(); ++i) {
    const Mark& m = p.marks[i];
    if (m.hole < 0 || m.hole >= board.size() || !p.pegs.test(m.hole)) {
      throw Error("bad-position", "mark " + std::to_string(m.id) + " is not on a peg");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (p.marks[j].id == m.id || p.marks[j].hole == m.hole) {
        throw Error("bad-position", "duplicate mark " + std::to_string(m.id));
      }
    }
  }
}

Position full_position(const Board& board) { return {board.full(), {}}; }

Position single_vacancy(const Board& board, int hole) {
  Position p = full_position(board);
  p.pegs.reset(hole);
  return p;
}

Position complement(const Board& board, const Position& p) {
  if (!p.marks.empty()) {
    throw Error("marked-complement", "the complement of a marked position is undefined");
  }
  return {board.full() ^ p.pegs, {}};
}

Position canonicalize(const Board& board, const Position& p,
                      std::span<const int> symmetry_indices) {
  Position best = p;
  for (int k : symmetry_indices) {
    if (board.symmetries()[k].is_identity()) continue;
    Position img{board.transform(p.pegs, k), p.marks};
    for (Mark& m : img.marks) m.hole = board.symmetries()[k].perm[m.hole];
    if (img.pegs < best.pegs) {
      best = std::move(img);
    } else if (img.pegs == best.pegs) {
      auto key = [](const Position& q) {
        std::vector<int> h;
        for (const Mark& m : q.marks) h.push_back(m.hole);
        return h;
      };
      if (key(img) < key(best)) best = std::move(img);
    }
  }
  return best;
}

Position canonicalize(const Board& board, const Position& p) {
  std::vector<int> all(board.symmetries().size());
  std::iota(all.begin(), all.end(), 0);
  return canonicalize(board, p, all);
}

std::vector<Cell> peg_cells(const Board& board, const PegSet& pegs) {
  std::vector<Cell> out;
  pegs.for_each([&](int h) { out.push_back(board.cell(h)); });
  return out;
}

}  // namespace pegsol
