#include "pegsol/board.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "pegsol/error.hpp"

namespace pegsol {

namespace {

constexpr std::array<Cell, 8> kDirections = {
    Cell{0, -1}, Cell{1, 0}, Cell{0, 1}, Cell{-1, 0},  // orthogonal
    Cell{1, -1}, Cell{1, 1}, Cell{-1, 1}, Cell{-1, -1},  // diagonal
};

Cell apply_transform(int t, Cell c) {
  int x = c.col, y = c.row;
  if (t & 4) std::swap(x, y);
  if (t & 1) x = -x;
  if (t & 2) y = -y;
  return {x, y};
}

}  // namespace

std::optional<int> Board::index_of(Cell c) const {
  if (c.col < min_col_ || c.col > max_col_ || c.row < min_row_ || c.row > max_row_) {
    return std::nullopt;
  }
  const int width = max_col_ - min_col_ + 1;
  const int h = grid_[(c.row - min_row_) * width + (c.col - min_col_)];
  if (h < 0) return std::nullopt;
  return h;
}

std::span<const int> Board::jumps_from(int hole) const { return jumps_from_[hole]; }

std::optional<int> Board::find_jump(int from, int to) const {
  for (int j : jumps_from_[from]) {
    if (jumps_[j].to == to) return j;
  }
  return std::nullopt;
}

PegSet Board::transform(const PegSet& s, int k) const {
  const auto& lanes = byte_images_[k];
  PegSet out;
  for (int w = 0; w < 2; ++w) {
    std::uint64_t x = s.word(w);
    for (int b = 0; x != 0; ++b, x >>= 8) {
      if (x & 0xFF) out |= lanes[w * 8 + b][x & 0xFF];
    }
  }
  return out;
}

Board build_board(std::vector<Cell> holes, JumpRule rule, std::string name) {
  if (holes.empty()) throw Error("empty-board", "board '" + name + "' has no holes");
  if (holes.size() > static_cast<std::size_t>(kMaxHoles)) {
    throw Error("too-many-holes", "board '" + name + "' exceeds " + std::to_string(kMaxHoles) +
                                      " holes");
  }
  std::sort(holes.begin(), holes.end());
  if (std::adjacent_find(holes.begin(), holes.end()) != holes.end()) {
    throw Error("duplicate-hole", "board '" + name + "' lists a hole twice");
  }

  Board b;
  b.name_ = std::move(name);
  b.rule_ = rule;
  b.holes_ = std::move(holes);
  b.min_col_ = b.max_col_ = b.holes_.front().col;
  b.min_row_ = b.holes_.front().row;
  b.max_row_ = b.holes_.back().row;
  for (const Cell& c : b.holes_) {
    b.min_col_ = std::min(b.min_col_, c.col);
    b.max_col_ = std::max(b.max_col_, c.col);
  }
  const int width = b.max_col_ - b.min_col_ + 1;
  const int height = b.max_row_ - b.min_row_ + 1;
  b.grid_.assign(static_cast<std::size_t>(width) * height, -1);
  for (int i = 0; i < b.size(); ++i) {
    const Cell& c = b.holes_[i];
    b.grid_[(c.row - b.min_row_) * width + (c.col - b.min_col_)] = i;
    b.full_.set(i);
  }

  const int ndirs = rule.diagonal ? 8 : 4;
  b.jumps_from_.resize(b.holes_.size());
  for (int i = 0; i < b.size(); ++i) {
    const Cell c = b.holes_[i];
    for (int d = 0; d < ndirs; ++d) {
      const Cell step = kDirections[d];
      auto over = b.index_of({c.col + step.col, c.row + step.row});
      auto to = b.index_of({c.col + 2 * step.col, c.row + 2 * step.row});
      if (!over || !to) continue;
      b.jumps_from_[i].push_back(static_cast<int>(b.jumps_.size()));
      b.jumps_.push_back({i, *over, *to});
    }
  }

  // Lattice isometries: map every hole, translate the image's bounding box
  // back onto the original one, and keep the map if it is onto the holes.
  for (int t = 0; t < 8; ++t) {
    int lo_c = std::numeric_limits<int>::max(), lo_r = std::numeric_limits<int>::max();
    for (const Cell& c : b.holes_) {
      const Cell m = apply_transform(t, c);
      lo_c = std::min(lo_c, m.col);
      lo_r = std::min(lo_r, m.row);
    }
    Symmetry sym{t, std::vector<int>(b.holes_.size())};
    bool ok = true;
    for (int i = 0; i < b.size() && ok; ++i) {
      const Cell m = apply_transform(t, b.holes_[i]);
      auto img = b.index_of({m.col - lo_c + b.min_col_, m.row - lo_r + b.min_row_});
      if (!img) ok = false;
      else sym.perm[i] = *img;
    }
    if (ok) b.symmetries_.push_back(std::move(sym));
  }

  b.byte_images_.resize(b.symmetries_.size());
  for (std::size_t k = 0; k < b.symmetries_.size(); ++k) {
    const auto& perm = b.symmetries_[k].perm;
    auto& lanes = b.byte_images_[k];
    for (int lane = 0; lane < 16; ++lane) {
      for (int v = 0; v < 256; ++v) {
        PegSet img;
        for (int bit = 0; bit < 8; ++bit) {
          const int hole = lane * 8 + bit;
          if ((v >> bit) & 1 && hole < b.size()) img.set(perm[hole]);
        }
        lanes[lane][v] = img;
      }
    }
  }
  return b;
}

Board generalized_cross(int n1, int n2, int n3, int n4) {
  if (n1 < 0 || n2 < 0 || n3 < 0 || n4 < 0) {
    throw Error("bad-arm", "arm lengths must be non-negative");
  }
  std::vector<Cell> holes;
  const int c0 = n4, r0 = n1;  // top-left of the 3x3 centre
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) holes.push_back({c0 + c, r0 + r});
  }
  for (int k = 1; k <= n1; ++k) {
    for (int c = 0; c < 3; ++c) holes.push_back({c0 + c, r0 - k});
  }
  for (int k = 1; k <= n3; ++k) {
    for (int c = 0; c < 3; ++c) holes.push_back({c0 + c, r0 + 2 + k});
  }
  for (int k = 1; k <= n2; ++k) {
    for (int r = 0; r < 3; ++r) holes.push_back({c0 + 2 + k, r0 + r});
  }
  for (int k = 1; k <= n4; ++k) {
    for (int r = 0; r < 3; ++r) holes.push_back({c0 - k, r0 + r});
  }
  return build_board(std::move(holes), {},
                     "cross-" + std::to_string(n1) + "-" + std::to_string(n2) + "-" +
                         std::to_string(n3) + "-" + std::to_string(n4));
}

std::string symmetry_name(const Board& board) {
  std::set<int> t;
  for (const Symmetry& s : board.symmetries()) t.insert(s.transform);
  const bool axis = t.count(1) || t.count(2);
  const bool diag = t.count(4) || t.count(7);
  switch (t.size()) {
    case 8:
      return "Square";
    case 4:
      if (axis) return "Rectangular";
      if (diag) return "Diagonal";
      return "Rotational";
    case 2:
      if (axis) return "Lateral";
      if (diag) return "Diagonal";
      return "Half-turn";
    default:
      return "";
  }
}

}  // namespace pegsol
