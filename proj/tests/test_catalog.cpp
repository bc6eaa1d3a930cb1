#include <algorithm>
#include <set>

#include "doctest.h"
#include "pegsol/catalog.hpp"
#include "pegsol/error.hpp"
#include "pegsol/notation.hpp"
#include "pegsol/solver.hpp"

using namespace pegsol;

namespace {

std::string code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

int rows_of(const Board& b) {
  int top = 1 << 30, bottom = -(1 << 30);
  for (const Cell& c : b.holes()) {
    top = std::min(top, c.row);
    bottom = std::max(bottom, c.row);
  }
  return bottom - top + 1;
}

}  // namespace

TEST_CASE("catalog boards have the published hole counts") {
  const std::pair<const char*, int> sizes[] = {
      {"english-33", 33},     {"french-37", 37},   {"wiegleb-45", 45},  {"semi-wiegleb-39", 39},
      {"diamond-41", 41},     {"square-36", 36},   {"square-64", 64},   {"mushroom-36", 36},
      {"longarm5-75", 75},
  };
  for (const auto& [id, n] : sizes) {
    CAPTURE(id);
    CHECK(catalog::get_board(id)->size() == n);
  }
  CHECK(catalog::list_entries().size() == std::size(sizes));
  CHECK(rows_of(*catalog::get_board("english-33")) == 7);
  CHECK(catalog::get_board("diamond-41")->rule().diagonal);
  CHECK_FALSE(catalog::get_board("french-37")->rule().diagonal);

  // Stored crosses agree with the generator.
  CHECK(std::ranges::equal(catalog::get_board("english-33")->holes(), generalized_cross(2, 2, 2, 2).holes()));
  CHECK(std::ranges::equal(catalog::get_board("semi-wiegleb-39")->holes(), generalized_cross(3, 2, 3, 2).holes()));
  CHECK(std::ranges::equal(catalog::get_board("wiegleb-45")->holes(), generalized_cross(3, 3, 3, 3).holes()));
}

TEST_CASE("catalog ids, aliases and errors") {
  CHECK(catalog::get_board("6x6") == catalog::get_board("square-36"));
  CHECK(catalog::get_board("8x8")->size() == 64);
  CHECK(catalog::get_board("cross-2-1-2-0")->size() == 24);
  CHECK(catalog::get_board("5x3")->size() == 15);
  CHECK(catalog::has_board("cross-3-2-0-1"));
  CHECK_FALSE(catalog::has_board("cross-2-1"));
  CHECK_FALSE(catalog::has_board("nowhere"));
  CHECK(code_of([] { catalog::get_board("nowhere"); }) == "unknown-id");
  CHECK(code_of([] { catalog::get_problem("nowhere"); }) == "unknown-id");
  CHECK(code_of([] { catalog::get_fixtures("nowhere"); }) == "unknown-id");

  for (const std::string& id : catalog::list_problems()) {
    CAPTURE(id);
    Problem p = catalog::get_problem(id);
    CHECK(p.id == id);
    CHECK_NOTHROW(validate_problem(p));
    CHECK(catalog::has_board(p.board_id));
    CHECK(std::ranges::equal(p.board->holes(), catalog::get_board(p.board_id)->holes()));
  }
  CHECK(catalog::get_fixtures("problem-2").size() == 2);
  CHECK(catalog::get_fixtures("french-37").size() == 4);
}

TEST_CASE("generalized cross table rows") {
  const auto rows = catalog::everywhere_table();
  REQUIRE(rows.size() == 12);
  std::set<std::string> ids;
  for (const auto& row : rows) {
    CAPTURE(row.id());
    const Board b = generalized_cross(row.n1, row.n2, row.n3, row.n4);
    CHECK(b.size() == row.holes);
    CHECK(symmetry_name(b) == row.symmetry);
    ids.insert(row.id());
  }
  CHECK(ids.size() == 12);
  CHECK(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.holes == 27; }) == 3);
}

TEST_CASE("every published solution replays with its metrics") {
  const auto fixtures = catalog::all_fixtures();
  CHECK(fixtures.size() == 13);
  for (const auto& f : fixtures) {
    CAPTURE(f.id);
    const Problem p = catalog::get_problem(f.problem_id);
    const VerifyReport r = verify_solution(p, parse_solution(f.text));
    CHECK(r.legal);
    CHECK(r.move_count == f.moves);
    CHECK(r.finish_met == f.complete);
    if (f.complete) CHECK(r.constraints_met);
    if (f.final_sweep) CHECK(r.final_sweep == *f.final_sweep);
  }
}

TEST_CASE("fixture details") {
  auto one = [](const char* id) { return catalog::get_fixtures(id).front(); };

  const auto c3 = one("square-36-c3");
  const auto c3_moves = parse_solution(c3.text);
  CHECK(format_solution({c3_moves.back()}) == "a1-c1-e1-e3-c3");

  const Problem p4 = catalog::get_problem("problem-4");
  const VerifyReport r4 = verify_solution(p4, parse_solution(one("problem-4").text));
  REQUIRE(r4.ok());
  const auto& path = r4.mark_paths.at(1);
  CHECK(format_cell(path.front()) == "f2");
  CHECK(format_cell(path.back()) == "b4");
  CHECK(r4.final_position.pegs.count() == 1);

  const Problem p5 = catalog::get_problem("problem-5");
  CHECK(p5.board->rule().diagonal);
  CHECK(p5.start.pegs.count() == 35);
  CHECK(*p5.max_moves == 13);

  const auto p2 = catalog::get_fixtures("problem-2");
  std::set<int> lengths;
  for (const auto& f : p2) lengths.insert(f.moves);
  CHECK(lengths == std::set<int>{21, 23});
}

TEST_CASE("problem 1 completes with the marks interchanged") {
  const Problem p = catalog::get_problem("problem-1");
  const auto f = catalog::get_fixtures("problem-1").front();
  const VerifyReport prefix = verify_solution(p, parse_solution(f.text));
  REQUIRE(prefix.legal);
  CHECK_FALSE(prefix.finish_met);
  // Both marks are still where they started.
  CHECK(format_cell(prefix.mark_paths.at(1).back()) == "a4");
  CHECK(format_cell(prefix.mark_paths.at(2).back()) == "g4");

  const Problem rest = with_start(p, prefix.final_position);
  const SolveReport s = solve(rest);
  REQUIRE(s.outcome == Outcome::solved);
  auto all = parse_solution(f.text);
  all.insert(all.end(), s.moves.begin(), s.moves.end());
  const VerifyReport full = verify_solution(p, all);
  CHECK(full.ok());
  CHECK(format_cell(full.mark_paths.at(1).back()) == "g4");
  CHECK(format_cell(full.mark_paths.at(2).back()) == "a4");
}

TEST_CASE("stored counts and regions") {
  auto eng = catalog::get_board("english-33");
  const auto counts = catalog::get_counts("english-33", *eng);
  REQUIRE(counts.size() == 1);
  CHECK(check_resource_count(*eng, counts[0]).empty());

  auto six = catalog::get_board("6x6");
  auto eight = catalog::get_board("8x8");
  const auto r6 = catalog::get_regions("6x6", *six);
  const auto r8 = catalog::get_regions("8x8", *eight);
  REQUIRE(r6);
  REQUIRE(r8);
  CHECK_NOTHROW(validate_decomposition(*six, *r6));
  CHECK_NOTHROW(validate_decomposition(*eight, *r8));
  CHECK(merson_bound(*six, *r6, parse_cell("c3")) == 15);
  CHECK(merson_bound(*six, *r6, parse_cell("c1")) == 15);
  CHECK(merson_bound(*six, *r6, parse_cell("a1")) == 16);
  CHECK(merson_bound(*eight, *r8, parse_cell("d6")) == 24);
  CHECK_FALSE(catalog::get_regions("french-37", *catalog::get_board("french-37")));
}

TEST_CASE("no stored count refutes a solved problem") {
  for (const auto& f : catalog::all_fixtures()) {
    CAPTURE(f.id);
    const Problem p = catalog::get_problem(f.problem_id);
    std::vector<ResourceCount> counts = catalog::get_counts(p.board_id, *p.board);
    // Golden counts aimed at every hole, where the rule allows them.
    if (!p.board->rule().diagonal) {
      for (const Cell& c : p.board->holes()) counts.push_back(golden_count(*p.board, c));
    }
    for (const ResourceCount& rc : counts) {
      if (!check_resource_count(*p.board, rc).empty()) continue;
      CAPTURE(rc.name);
      CHECK_FALSE(resource_infeasible(p, rc));
    }
  }
}
