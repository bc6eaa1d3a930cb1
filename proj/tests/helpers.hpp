#pragma once

#include <random>
#include <vector>

#include "pegsol/board.hpp"
#include "pegsol/move.hpp"

namespace testing {

inline pegsol::Board rectangle(int w, int h, bool diagonal = false) {
  std::vector<pegsol::Cell> holes;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) holes.push_back({c, r});
  }
  return pegsol::build_board(holes, {diagonal}, std::to_string(w) + "x" + std::to_string(h));
}

inline pegsol::Board french() {
  std::vector<pegsol::Cell> holes;
  const int half[] = {1, 2, 3, 3, 3, 2, 1};
  for (int r = 0; r < 7; ++r) {
    for (int c = 3 - half[r]; c <= 3 + half[r]; ++c) holes.push_back({c, r});
  }
  return pegsol::build_board(holes, {}, "french");
}

// Corner singletons, edge dominoes and 2x2 interior blocks on an n x n square
// (n even).
inline std::vector<pegsol::PegSet> square_regions(const pegsol::Board& b, int n) {
  std::vector<pegsol::PegSet> out;
  auto at = [&](int c, int r) { return pegsol::PegSet::single(*b.index_of({c, r})); };
  for (int c : {0, n - 1}) {
    for (int r : {0, n - 1}) out.push_back(at(c, r));
  }
  for (int k = 1; k + 1 <= n - 2; k += 2) {
    out.push_back(at(k, 0) | at(k + 1, 0));
    out.push_back(at(k, n - 1) | at(k + 1, n - 1));
    out.push_back(at(0, k) | at(0, k + 1));
    out.push_back(at(n - 1, k) | at(n - 1, k + 1));
  }
  for (int c = 1; c < n - 1; c += 2) {
    for (int r = 1; r < n - 1; r += 2) out.push_back(at(c, r) | at(c + 1, r) | at(c, r + 1) | at(c + 1, r + 1));
  }
  return out;
}

inline pegsol::Board english() { return pegsol::generalized_cross(2, 2, 2, 2); }

// Plays uniformly random legal moves until none remain or `max_moves` is hit,
// calling f(before, move, after) for each.
template <class F>
void random_playout(const pegsol::Board& b, pegsol::Position p, std::mt19937_64& rng,
                    int max_moves, F&& f) {
  for (int k = 0; k < max_moves; ++k) {
    auto moves = pegsol::legal_moves(b, p);
    if (moves.empty()) return;
    const auto& m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    pegsol::Position q = pegsol::apply_move(b, p, m, pegsol::MarkCapture::allow);
    f(p, m, q);
    p = std::move(q);
  }
}

}  // namespace testing
