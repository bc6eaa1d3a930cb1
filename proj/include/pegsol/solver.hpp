#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "pegsol/move.hpp"
#include "pegsol/problem.hpp"
#include "pegsol/theory.hpp"

namespace pegsol {

// ---- verification ----

struct VerifyReport {
  bool legal = true;
  int illegal_move = -1;  // 0-based move index of the first illegal jump
  int illegal_jump = -1;  // jump index within that move
  std::string error;      // code and message of the illegality

  int move_count = 0;
  std::vector<int> sweeps;
  int max_sweep = 0;
  int final_sweep = 0;

  bool finish_met = false;
  bool constraints_met = true;
  std::vector<std::string> violations;  // constraint failures, in text

  // Per mark id: its cell at the start and after every move played.
  std::map<int, std::vector<Cell>> mark_paths;
  Position final_position;

  bool ok() const { return legal && finish_met && constraints_met; }
};

// Replays `moves` from the problem's start. Illegal play is reported, not
// thrown; only a path through a cell that is not a hole throws
// (Error("not-a-hole")).
VerifyReport verify_solution(const Problem& p, const std::vector<Move>& moves);

// ---- search ----

enum class Strategy { automatic, jumps, moves, bidirectional };

struct SolveOptions {
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;
  int threads = 1;

  bool use_symmetry = true;
  bool use_class = true;
  bool use_resource = true;  // `counts` plus a golden count per single finish peg
  bool use_table = true;
  // Dynamic Merson bound; needs `regions`. Off unless asked for.
  bool use_merson = false;

  std::vector<ResourceCount> counts;
  std::optional<RegionDecomposition> regions;
  std::size_t table_entries = std::size_t{1} << 23;
  Strategy strategy = Strategy::automatic;
  // Min-final-sweep problems: enumerate final sweeps backwards from the
  // finish, then solve up to each pre-sweep position.
  bool presweep_first = false;

  std::stop_token stop;
};

enum class Outcome { solved, unsolvable, exhausted };

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t table_hits = 0;
  double seconds = 0;
  int depth_completed = -1;  // move budget proven insufficient (shortest)
};

struct SolveReport {
  Outcome outcome = Outcome::exhausted;
  // "class-mismatch", "resource-deficit:<count>", "exhaustive-search",
  // "budget", "cancelled", or "" when solved.
  std::string reason;
  std::vector<Move> moves;  // a solution; for exhausted, the best seen if any
  bool optimal = false;
  int lower_bound = 0;      // moves proven necessary
  SolveStats stats;
};

std::string outcome_name(Outcome o);

// Any solution. Error("bad-budget") for a non-positive budget.
SolveReport solve(const Problem& p, const SolveOptions& opts = {});

// Fewest moves, by iterative deepening on the move count. `optimal` is set
// only when every smaller move count has been refuted.
SolveReport shortest_solution(const Problem& p, const SolveOptions& opts = {});

struct EverywhereReport {
  std::vector<std::optional<bool>> solvable;  // per hole; empty when undecided
  std::vector<std::string> reasons;           // per hole
  bool all_solvable() const;
  bool complete() const;
};

// Solves the complement problem at one hole per symmetry orbit.
EverywhereReport solvable_everywhere(const std::shared_ptr<const Board>& board,
                                     const SolveOptions& opts = {});

struct Hint {
  std::optional<Move> move;
  std::string reason;  // why there is no move: "finished", "class-mismatch", ...
};

// First move of a solution from `pos`. `book` holds known solutions of the
// problem from its start; a position on a book line gets the book's next move.
Hint hint(const Problem& p, const Position& pos, const SolveOptions& opts = {},
          const std::vector<std::vector<Move>>& book = {});

// ---- time reversal ----

// Start comp(finish), finish comp(start). Error("marked-complement") if the
// problem has marks.
Problem reversed_problem(const Problem& p);
// The same jumps in reverse order, regrouped into moves. A solution of p
// becomes a solution of reversed_problem(p).
std::vector<Move> time_reverse(const Board& board, const std::vector<Move>& moves);

}  // namespace pegsol
