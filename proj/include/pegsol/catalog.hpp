#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pegsol/board.hpp"
#include "pegsol/problem.hpp"
#include "pegsol/theory.hpp"

// Read-only boards, problems, published solutions, counts and regions,
// compiled into the library from the files under data/. Ids are file stems.
namespace pegsol::catalog {

struct Fixture {
  std::string id;
  std::string problem_id;
  std::string attribution;  // may be empty
  std::string text;         // the solution as printed
  int moves = 0;            // expected move count
  std::optional<int> final_sweep;
  bool complete = true;     // false: the listing stops short of the finish
};

// A generalized cross board solvable at every hole.
struct TableRow {
  int n1 = 0, n2 = 0, n3 = 0, n4 = 0;
  int holes = 0;
  std::string symmetry;  // symmetry_name of the board, "" for none
  std::string id() const;
};

// Stored board ids, sorted.
std::vector<std::string> list_entries();
std::vector<std::string> list_problems();

// Stored ids plus "cross-<n1>-<n2>-<n3>-<n4>", "<w>x<h>" rectangles and the
// aliases 6x6 and 8x8 for square-36 and square-64. Error("unknown-id").
std::shared_ptr<const Board> get_board(std::string_view id);
bool has_board(std::string_view id);
// The board file text with every hole pegged.
std::string board_text(std::string_view id);

Problem get_problem(std::string_view id);
std::string problem_text(std::string_view id);

// Fixtures of a problem id, or of every problem on a board id. Error("unknown-id")
// when the id names neither.
std::vector<Fixture> get_fixtures(std::string_view id);
std::vector<Fixture> all_fixtures();

// Stored counts for the board id; each is checked against `board`.
std::vector<ResourceCount> get_counts(std::string_view board_id, const Board& board);
std::optional<RegionDecomposition> get_regions(std::string_view board_id, const Board& board);

std::vector<TableRow> everywhere_table();

}  // namespace pegsol::catalog
