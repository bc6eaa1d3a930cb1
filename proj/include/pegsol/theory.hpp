#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pegsol/board.hpp"
#include "pegsol/position.hpp"
#include "pegsol/problem.hpp"

namespace pegsol {

// ---- position classes ----

// Four parity bits from the diagonal labelings L1 = (col - row) mod 3 and
// L2 = (col + row) mod 3: for each labeling, (n0 + n1) mod 2 and
// (n1 + n2) mod 2, where nk counts pegs with label k. An orthogonal jump
// touches one hole of each label per labeling, flipping all three counts, so
// every bit is invariant. Bits are XOR-additive over disjoint peg sets.
struct PositionClass {
  std::uint8_t bits = 0;  // bit 0,1: L1 pair; bit 2,3: L2 pair

  friend bool operator==(PositionClass, PositionClass) = default;
  friend PositionClass operator^(PositionClass a, PositionClass b) {
    return {static_cast<std::uint8_t>(a.bits ^ b.bits)};
  }
};

// Error("diagonal-rule") on boards with diagonal jumps.
PositionClass position_class(const Board& board, const PegSet& pegs);
PositionClass hole_class(const Board& board, int hole);

// Every position is in the class of its complement iff class(full) is zero:
// class(full \ P) = class(full) ^ class(P) by additivity, so equality with
// class(P) for all P (or just all single pegs) holds exactly when
// class(full) = class(empty) = 0.
bool is_null_class(const Board& board);
// The defining form: class(full minus h) == class({h}) for every hole h.
bool is_null_class_per_hole(const Board& board);

// start and finish of an orthogonal problem lie in the same class. Always
// true on diagonal boards, where no class invariant exists.
bool class_feasible(const Problem& p);

// ---- resource counts ----

// a + b*s exactly, where s = (sqrt 5 - 1) / 2 satisfies s^2 = 1 - s, so that
// s^(n-1) = s^n + s^(n+1).
struct GoldenNumber {
  std::int64_t a = 0;
  std::int64_t b = 0;

  static GoldenNumber sigma_pow(int n);
  GoldenNumber times_sigma() const { return {b, a - b}; }
  int sign() const;
  double approx() const;

  friend GoldenNumber operator+(GoldenNumber x, GoldenNumber y) { return {x.a + y.a, x.b + y.b}; }
  friend GoldenNumber operator-(GoldenNumber x, GoldenNumber y) { return {x.a - y.a, x.b - y.b}; }
  GoldenNumber& operator+=(GoldenNumber y) { return *this = *this + y; }
  friend bool operator==(GoldenNumber, GoldenNumber) = default;
  friend std::strong_ordering operator<=>(GoldenNumber x, GoldenNumber y) {
    return (x - y).sign() <=> 0;
  }
};

std::string format_golden(GoldenNumber g);

// A weight per hole. Valid when w(s) + w(o) >= w(t) for every jump, which
// makes the total weight of the pegs non-increasing under play.
struct ResourceCount {
  std::string name;
  std::vector<GoldenNumber> weights;  // indexed by hole
};

// Violated jumps, in board jump order. Error("missing-weight") when the
// weight vector does not cover the board.
std::vector<Jump> check_resource_count(const Board& board, const ResourceCount& rc);
GoldenNumber resource_value(const ResourceCount& rc, const PegSet& pegs);
// value(start) < value(finish): a proof that the problem has no solution.
// Error("invalid-count") when rc is not valid on the problem's board.
bool resource_infeasible(const Problem& p, const ResourceCount& rc);

// w(c) = s^(|dc| + |dr|) toward `apex`. Valid on any orthogonal board: the
// tightest jump runs straight at the apex and gives s^n + s^(n-1) = s^(n-2).
ResourceCount golden_count(const Board& board, Cell apex);

// Grid format sharing the board files' layout directives. '.' is weight 0,
// a digit k is s^k, other symbols are declared as "weight: <sym> <a> <b>".
ResourceCount parse_resource_count(std::string_view text, const Board& board);
std::string format_resource_count(const Board& board, const ResourceCount& rc);

// ---- Merson regions ----

// Disjoint hole sets. A region that is full can lose a peg only through a
// jump whose source lies in the region, provided every cell of the region
// that can be jumped over has a region neighbour on each line it is jumped
// along; validate_decomposition enforces that property.
struct RegionDecomposition {
  std::string name;
  std::vector<std::string> labels;
  std::vector<PegSet> regions;
  std::vector<int> region_of;  // per hole, -1 when uncovered

  bool covers(const Board& board) const;
};

RegionDecomposition make_decomposition(const Board& board, std::string name,
                                       std::vector<std::string> labels,
                                       std::vector<PegSet> regions);
// Error("bad-regions") for overlapping regions or a region without the
// property above.
void validate_decomposition(const Board& board, const RegionDecomposition& d);

// R - 1 moves for R regions, or R when the vacancy is a one-hole region
// (the first move refills it). Error("not-a-hole"), Error("bad-regions")
// when the regions do not cover the board.
int merson_bound(const Board& board, const RegionDecomposition& d, Cell vacancy);

// Full regions that the finish needs opened, ignoring region `skip`. Each
// needs a distinct later move to open it.
int merson_open_count(const RegionDecomposition& d, const PegSet& pegs, const PegSet& finish,
                      int skip = -1);

// One symbol per region; '.' marks an uncovered hole.
RegionDecomposition parse_regions(std::string_view text, const Board& board);
std::string format_regions(const Board& board, const RegionDecomposition& d);

}  // namespace pegsol
