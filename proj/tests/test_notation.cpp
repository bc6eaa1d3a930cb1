#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "pegsol/error.hpp"
#include "pegsol/notation.hpp"

using namespace pegsol;

namespace {

const char* kFrenchInterchange =
    "name: interchange\n"
    "  OOO\n"
    " OOOOO\n"
    "OOOOOOO\n"
    "1OO.OO2\n"
    "OOOOOOO\n"
    " OOOOO\n"
    "  OOO\n"
    "---\n"
    "\n"
    "\n"
    "\n"
    "2     1\n"
    "interchange: 1 2\n";

std::string code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("cell names") {
  CHECK(parse_cell("d1") == Cell{3, 0});
  CHECK(parse_cell("z6") == Cell{-1, 5});
  CHECK(parse_cell("x6") == Cell{-3, 5});
  CHECK(parse_cell("e11") == Cell{4, 10});
  CHECK(parse_cell("w1") == Cell{-4, 0});
  CHECK(parse_cell("v3") == Cell{21, 2});
  for (int col = -4; col <= 21; ++col) {
    for (int row = 0; row < 15; ++row) CHECK(parse_cell(format_cell({col, row})) == Cell{col, row});
  }
  for (const char* bad : {"", "d", "1d", "D4", "d0", "d-1", "d1x", "d01"}) {
    CHECK(code_of([&] { parse_cell(bad); }) == "bad-cell");
  }
  CHECK_THROWS_AS(format_cell({-5, 0}), Error);
  CHECK_THROWS_AS(format_cell({0, -1}), Error);
}

TEST_CASE("solution text") {
  auto moves = parse_solution("a1-c1-e1-e3-c3");
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].sweep() == 4);

  const char* harris =
      "c1-c3, a1-c1, d1-b1, f1-d1, a3-a1-c1-e1 (5), a5-a3, c4-a4-a2-c2-c4,\n"
      "d4-b4, c6-c4-a4, e3-c3-a3-a5-c5 (10), f3-f1-d1-d3, f5-f3,\n"
      "d6-d4-d2-f2-f4-d4, f6-d6, a6-c6-e6-e4-c4-c6.";
  CHECK(parse_solution(harris).size() == 15);

  CHECK(code_of([] { parse_solution("c1-c3 (2)"); }) == "checksum");
  CHECK(code_of([] { parse_solution("c1"); }) == "bad-solution");
  CHECK(code_of([] { parse_solution("c1-c3 c4-c2"); }) == "bad-solution");
  CHECK(code_of([] { parse_solution("c1-c3,, c4-c2"); }) == "bad-solution");
  CHECK(code_of([] { parse_solution("c1-c3. c4-c2"); }) == "bad-solution");
  CHECK(code_of([] { parse_solution("c1-c3 (x)"); }) == "bad-solution");
  CHECK(parse_solution("e6-e4!").size() == 1);
  CHECK(parse_solution("").empty());
  CHECK(parse_solution("c1-c3,\r\n d1-b1").size() == 2);
}

TEST_CASE("solution round trip") {
  Board b = testing::english();
  std::mt19937_64 rng(1);
  std::vector<Move> played;
  testing::random_playout(b, single_vacancy(b, 16), rng, 30,
                          [&](const Position&, const Move& m, const Position&) { played.push_back(m); });
  const std::string text = format_solution(played);
  CHECK(parse_solution(text) == played);
  if (played.size() >= 5) CHECK(text.find("(5)") != std::string::npos);
}

TEST_CASE("board files") {
  Board e = testing::english();
  const std::string text = format_board(e, single_vacancy(e, 16));
  CHECK(text ==
        "name: cross-2-2-2-2\n"
        "  OOO\n"
        "  OOO\n"
        "OOOOOOO\n"
        "OOO.OOO\n"
        "OOOOOOO\n"
        "  OOO\n"
        "  OOO\n");
  ParsedBoard back = parse_board(text);
  CHECK(back.board.size() == 33);
  CHECK(back.start.pegs.count() == 32);
  CHECK(format_board(back.board, back.start) == text);

  ParsedBoard shifted = parse_board("origin-file: z\norigin-rank: 3\n.OO\n 1\n");
  CHECK(shifted.board.cell(0) == Cell{-1, 2});
  CHECK(shifted.start.marks == std::vector<Mark>{{1, 3}});
  CHECK(parse_board(format_board(shifted.board, shifted.start)).start == shifted.start);

  CHECK(code_of([] { parse_board("OO\nmax-moves: 3\n"); }) == "unknown-directive");
  CHECK(code_of([] { parse_board("O1\n1O\n"); }) == "duplicate-mark");
  CHECK(code_of([] { parse_board("OxO\n"); }) == "bad-grid");
  CHECK(code_of([] { parse_board("rule: sideways\nOOO\n"); }) == "bad-directive");
  CHECK(parse_board("rule: diagonal\r\nOOO\r\nOOO\r\n").board.rule().diagonal);
}

TEST_CASE("problem files") {
  Problem p = parse_problem(kFrenchInterchange);
  CHECK(p.board->size() == 37);
  CHECK(p.start.pegs.count() == 36);
  REQUIRE(p.start.marks.size() == 2);
  const int a4 = *p.board->index_of(parse_cell("a4"));
  const int g4 = *p.board->index_of(parse_cell("g4"));
  CHECK(p.start.marks[0] == Mark{1, a4});
  CHECK(p.finish_marks == std::vector<Mark>{{1, g4}, {2, a4}});
  CHECK(p.finish_pegs.count() == 2);

  // The interchange directive alone derives the finish marks.
  std::string derived = kFrenchInterchange;
  derived.replace(derived.find("2     1\n"), 8, "");
  CHECK(parse_problem(derived).finish_marks == p.finish_marks);

  std::string wrong = kFrenchInterchange;
  wrong.replace(wrong.find("2     1\n"), 8, "1     2\n");
  CHECK(code_of([&] { parse_problem(wrong); }) == "bad-directive");

  Problem again = parse_problem(format_problem(p));
  CHECK(again.start == p.start);
  CHECK(again.finish_pegs == p.finish_pegs);
  CHECK(again.finish_marks == p.finish_marks);

  const char* central =
      "  OOO\n  OOO\nOOOOOOO\nOOO.OOO\nOOOOOOO\n  OOO\n  OOO\n---\n\n\n\n   O\n";
  Problem c = parse_problem(central);
  CHECK(c.finish_pegs == PegSet::single(16));
  CHECK(c.start.pegs == (c.board->full() ^ c.finish_pegs));

  CHECK(code_of([] { parse_problem("OO.\n---\nOO.O\n"); }) == "hole-mismatch");
  CHECK(code_of([] { parse_problem("OO.\n---\n..O\nfoo: 1\n"); }) == "unknown-directive");
  CHECK(code_of([] { parse_problem("OO.\n"); }) == "bad-grid");
  CHECK(code_of([] { parse_problem("O.\n---\nOO\n"); }) == "bad-problem");

  Problem d = parse_problem("rule: diagonal\nmax-moves: 13\nmin-final-sweep: 2\nmarks-immobile: yes\nOO.\n---\n..O\n");
  CHECK(d.board->rule().diagonal);
  CHECK(d.max_moves == 13);
  CHECK(d.min_final_sweep == 2);
  CHECK(d.marks_immobile);
}
