#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "doctest.h"
#include "helpers.hpp"
#include "pegsol/catalog.hpp"
#include "pegsol/error.hpp"
#include "pegsol/notation.hpp"
#include "pegsol/solver.hpp"
#include "pegsol/transposition.hpp"

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

std::shared_ptr<const Board> shared(Board b) { return std::make_shared<const Board>(std::move(b)); }

int hole(const Board& b, const char* cell) { return *b.index_of(parse_cell(cell)); }

SolveOptions merson_options(const Board& six) {
  SolveOptions o;
  o.use_merson = true;
  o.regions = make_decomposition(six, "merson", std::vector<std::string>(16, "r"), testing::square_regions(six, 6));
  return o;
}

// Positions along a solution, one per jump.
std::vector<Position> jump_positions(const Board& b, const Position& start, const std::vector<Move>& moves) {
  std::vector<Position> out{start};
  for (const Move& m : moves) {
    for (const Jump& j : move_jumps(b, m)) out.push_back(apply_move(b, out.back(), Move{{b.cell(j.from), b.cell(j.to)}}));
  }
  return out;
}

}  // namespace

TEST_CASE("transposition table keeps the largest failing budget") {
  TranspositionTable t(100);
  CHECK(t.capacity() == 128);
  const TableKey a{1, 2, 3}, b{1, 2, 4};
  CHECK(t.probe(a) == -1);
  t.store(a, 5);
  CHECK(t.probe(a) == 5);
  CHECK(t.probe(b) == -1);
  t.store(a, 3);
  CHECK(t.probe(a) == 5);
  t.store(a, 9);
  CHECK(t.probe(a) == 9);
  t.store(b, TranspositionTable::kUnbounded);
  CHECK(t.probe(b) == TranspositionTable::kUnbounded);
  t.clear();
  CHECK(t.probe(a) == -1);
}

TEST_CASE("transposition table never returns another key's value") {
  TranspositionTable t(64);
  auto budget_of = [](std::uint64_t k) { return static_cast<int>(k % 97); };
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < 4; ++w) {
      pool.emplace_back([&, w] {
        std::mt19937_64 rng(w);
        for (int i = 0; i < 20000; ++i) {
          const std::uint64_t k = rng() % 5000;
          t.store({k, ~k, k & 0xFF}, budget_of(k));
          const int got = t.probe({k ^ 1, ~(k ^ 1), (k ^ 1) & 0xFF});
          CHECK((got == -1 || got == budget_of(k ^ 1)));
        }
      });
    }
  }
  for (std::uint64_t k = 0; k < 5000; ++k) {
    const int got = t.probe({k, ~k, k & 0xFF});
    CHECK((got == -1 || got == budget_of(k)));
  }
}

TEST_CASE("verify reports metrics and illegal play as data") {
  auto six = shared(testing::rectangle(6, 6));
  Problem p = single_survivor_problem(six, hole(*six, "c3"), hole(*six, "c6"));
  const std::vector<Move> harris = parse_solution(catalog::get_fixtures("square-36-c3-c6")[0].text);

  VerifyReport ok = verify_solution(p, harris);
  CHECK(ok.ok());
  CHECK(ok.move_count == 15);
  CHECK(ok.sweeps.size() == 15);
  CHECK(ok.max_sweep == 5);
  CHECK(ok.final_sweep == 5);
  CHECK(ok.final_position.pegs == PegSet::single(hole(*six, "c6")));

  std::vector<Move> truncated(harris.begin(), harris.end() - 1);
  VerifyReport t = verify_solution(p, truncated);
  CHECK(t.legal);
  CHECK_FALSE(t.finish_met);
  CHECK_FALSE(t.ok());

  std::vector<Move> bad = harris;
  bad[4] = parse_solution("a3-a1-c1-e1-c1")[0];  // fourth jump has nothing to capture
  VerifyReport b = verify_solution(p, bad);
  CHECK_FALSE(b.legal);
  CHECK(b.illegal_move == 4);
  CHECK(b.illegal_jump == 3);
  CHECK(b.move_count == 4);
  CHECK(b.error.starts_with("nothing-to-jump"));

  std::vector<Move> off = harris;
  off[0] = parse_solution("c1-c3-c5-c7")[0];
  CHECK(code_of([&] { verify_solution(p, off); }) == "not-a-hole");

  p.max_moves = 14;
  p.min_final_sweep = 6;
  VerifyReport c = verify_solution(p, harris);
  CHECK(c.legal);
  CHECK(c.finish_met);
  CHECK_FALSE(c.constraints_met);
  CHECK(c.violations.size() == 2);
}

TEST_CASE("verify tracks marks and the immobile rule") {
  auto row = shared(testing::rectangle(5, 1));
  Problem p;
  p.board = row;
  p.start = Position{PegSet::single(0) | PegSet::single(1) | PegSet::single(3), {{1, 0}}};
  p.finish_pegs = PegSet::single(4);
  p.finish_marks = {{1, 4}};
  p.marks_immobile = true;
  const auto moves = parse_solution("a1-c1-e1");
  VerifyReport r = verify_solution(p, moves);
  CHECK(r.ok());
  CHECK(r.mark_paths.at(1) == std::vector<Cell>{parse_cell("a1"), parse_cell("e1")});

  Problem q = p;
  q.start.marks = {{1, 3}};
  // The marked d1 peg may not be captured.
  VerifyReport s = verify_solution(q, parse_solution("a1-c1-e1"));
  CHECK_FALSE(s.legal);
  CHECK(s.error.starts_with("marked-capture"));
}

TEST_CASE("trivial and statically refuted problems") {
  auto six = shared(testing::rectangle(6, 6));
  Problem done = single_survivor_problem(six, 0, 0);
  done.start = Position{done.finish_pegs, {}};
  SolveReport r = solve(done);
  CHECK(r.outcome == Outcome::solved);
  CHECK(r.moves.empty());
  CHECK(r.optimal);
  CHECK(shortest_solution(done).moves.empty());

  auto french = shared(testing::french());
  SolveReport c = solve(complement_problem(french, hole(*french, "d4")));
  CHECK(c.outcome == Outcome::unsolvable);
  CHECK(c.reason == "class-mismatch");
  CHECK(c.stats.nodes == 0);

  // Two pegs far from the target cannot pay for it.
  auto row = shared(testing::rectangle(7, 1));
  Problem far;
  far.board = row;
  far.start = Position{PegSet::single(0) | PegSet::single(1), {}};
  far.finish_pegs = PegSet::single(6);
  SolveOptions no_class;
  no_class.use_class = false;
  SolveReport d = solve(far, no_class);
  CHECK(d.outcome == Outcome::unsolvable);
  CHECK(d.reason == "resource-deficit:golden-g1");

  SolveOptions off = no_class;
  off.use_resource = false;
  SolveReport e = solve(far, off);
  CHECK(e.outcome == Outcome::unsolvable);
  CHECK(e.reason == "exhaustive-search");
}

TEST_CASE("budget errors, exhaustion and cancellation") {
  auto eng = shared(testing::english());
  Problem p = complement_problem(eng, hole(*eng, "d4"));
  SolveOptions o;
  o.max_nodes = 0;
  CHECK(code_of([&] { solve(p, o); }) == "bad-budget");
  o.max_nodes.reset();
  o.max_seconds = 0;
  CHECK(code_of([&] { solve(p, o); }) == "bad-budget");
  o.max_seconds.reset();
  o.threads = 0;
  CHECK(code_of([&] { solve(p, o); }) == "bad-budget");

  auto six = shared(testing::rectangle(6, 6));
  Problem c1 = complement_problem(six, hole(*six, "c1"));
  SolveOptions small;
  small.max_nodes = 5000;
  SolveReport r = shortest_solution(c1, small);
  CHECK(r.outcome == Outcome::exhausted);
  CHECK(r.reason == "budget");
  CHECK(r.stats.nodes >= 5000);
  CHECK(r.lower_bound >= 1);

  std::stop_source stop;
  stop.request_stop();
  SolveOptions cancelled;
  cancelled.stop = stop.get_token();
  SolveReport s = shortest_solution(c1, cancelled);
  CHECK(s.outcome == Outcome::exhausted);
  CHECK(s.reason == "cancelled");
}

TEST_CASE("solve finds verified solutions") {
  auto eng = shared(testing::english());
  Problem p = complement_problem(eng, hole(*eng, "d4"));
  SolveReport r = solve(p);
  REQUIRE(r.outcome == Outcome::solved);
  CHECK(verify_solution(p, r.moves).ok());

  SolveOptions threaded;
  threaded.threads = 3;
  SolveReport t = solve(p, threaded);
  REQUIRE(t.outcome == Outcome::solved);
  CHECK(verify_solution(p, t.moves).ok());

  // Marked pegs: a three-peg row where the mark must end on the right.
  auto row = shared(testing::rectangle(5, 1));
  Problem m;
  m.board = row;
  m.start = Position{PegSet::single(0) | PegSet::single(1) | PegSet::single(3), {{1, 0}}};
  m.finish_pegs = PegSet::single(4);
  m.finish_marks = {{1, 4}};
  SolveReport mr = solve(m);
  REQUIRE(mr.outcome == Outcome::solved);
  CHECK(format_solution(mr.moves) == "a1-c1-e1");
  m.start.marks = {{1, 3}};
  CHECK(solve(m).outcome == Outcome::unsolvable);
}

TEST_CASE("shortest solution on the 6x6 board") {
  auto six = shared(testing::rectangle(6, 6));
  Problem p = single_survivor_problem(six, hole(*six, "c3"), hole(*six, "c6"));
  SolveReport r = shortest_solution(p, merson_options(*six));
  REQUIRE(r.outcome == Outcome::solved);
  CHECK(r.moves.size() == 15);
  CHECK(r.optimal);
  CHECK(r.lower_bound == 15);
  CHECK(verify_solution(p, r.moves).ok());
}

TEST_CASE("move limits and final sweeps constrain the search") {
  auto eng = shared(testing::english());
  Problem p = complement_problem(eng, hole(*eng, "d4"));
  // Endgame: the last 6 jumps of a known solution.
  SolveReport any = solve(p);
  REQUIRE(any.outcome == Outcome::solved);
  const auto line = jump_positions(*eng, p.start, any.moves);
  Problem end = with_start(p, line[line.size() - 7]);
  SolveReport best = shortest_solution(end);
  REQUIRE(best.outcome == Outcome::solved);
  const int n = static_cast<int>(best.moves.size());

  end.max_moves = n;
  CHECK(solve(end).outcome == Outcome::solved);
  end.max_moves = n - 1;
  SolveReport none = solve(end);
  CHECK(none.outcome == Outcome::unsolvable);
  CHECK(none.reason == "exhaustive-search");
  end.max_moves.reset();

  // The longest final sweep available, found by raising the requirement.
  int longest = 0;
  for (int k = 1; k <= 6; ++k) {
    end.min_final_sweep = k;
    SolveReport s = solve(end);
    if (s.outcome != Outcome::solved) break;
    CHECK(verify_solution(end, s.moves).ok());
    SolveOptions pre;
    pre.presweep_first = true;
    SolveReport ps = solve(end, pre);
    REQUIRE(ps.outcome == Outcome::solved);
    CHECK(verify_solution(end, ps.moves).ok());
    longest = k;
  }
  CHECK(longest >= 1);
  end.min_final_sweep = longest + 1;
  SolveOptions pre;
  pre.presweep_first = true;
  CHECK(solve(end, pre).outcome == Outcome::unsolvable);
}

TEST_CASE("determinism with one thread") {
  auto eng = shared(testing::english());
  Problem p = complement_problem(eng, hole(*eng, "d4"));
  SolveReport a = solve(p), b = solve(p);
  CHECK(a.moves == b.moves);
  CHECK(a.stats.nodes == b.stats.nodes);
  CHECK(a.stats.table_hits == b.stats.table_hits);

  auto six = shared(testing::rectangle(6, 6));
  Problem q = single_survivor_problem(six, hole(*six, "c3"), hole(*six, "c6"));
  SolveOptions o = merson_options(*six);
  o.max_nodes = 300000;
  SolveReport x = shortest_solution(q, o), y = shortest_solution(q, o);
  CHECK(x.outcome == y.outcome);
  CHECK(x.lower_bound == y.lower_bound);
  CHECK(x.stats.nodes == y.stats.nodes);
  CHECK(x.stats.depth_completed == y.stats.depth_completed);
}

TEST_CASE("6x6 problem suite: orbit pairs and pruning-free endgames") {
  auto six = shared(testing::rectangle(6, 6));
  // (vacancy, survivor) pairs in the same class, up to symmetry.
  std::set<std::pair<int, int>> pairs;
  for (int v = 0; v < six->size(); ++v) {
    for (int f = 0; f < six->size(); ++f) {
      if (!class_feasible(single_survivor_problem(six, v, f))) continue;
      std::pair<int, int> best{v, f};
      for (const Symmetry& s : six->symmetries()) best = std::min(best, std::pair{s.perm[v], s.perm[f]});
      pairs.insert(best);
    }
  }
  CHECK(pairs.size() == 21);

  SolveOptions off;
  off.use_symmetry = off.use_class = off.use_resource = off.use_table = false;
  std::mt19937_64 rng(7);
  for (auto [v, f] : pairs) {
    CAPTURE(format_cell(six->cell(v)));
    CAPTURE(format_cell(six->cell(f)));
    Problem p = single_survivor_problem(six, v, f);
    SolveReport r = solve(p);
    REQUIRE(r.outcome == Outcome::solved);
    CHECK(verify_solution(p, r.moves).ok());
    const auto line = jump_positions(*six, p.start, r.moves);
    // Restart eight to eleven jumps before the end.
    const int back = 8 + static_cast<int>(rng() % 4);
    Problem end = with_start(p, line[line.size() - 1 - back]);
    SolveReport on = shortest_solution(end, merson_options(*six));
    SolveReport bare = shortest_solution(end, off);
    REQUIRE(on.outcome == Outcome::solved);
    REQUIRE(bare.outcome == Outcome::solved);
    CHECK(on.moves.size() == bare.moves.size());
    CHECK(on.optimal);
    CHECK(bare.optimal);
  }
}

TEST_CASE("time reversal turns complement solutions into solutions") {
  for (const catalog::Fixture& f : catalog::all_fixtures()) {
    Problem p = catalog::get_problem(f.problem_id);
    if (!f.complete || !p.start.marks.empty()) continue;
    const bool complement = p.start.pegs == (p.board->full() ^ p.finish_pegs);
    CAPTURE(f.id);
    const std::vector<Move> moves = parse_solution(f.text);
    Problem q = reversed_problem(p);
    if (complement) CHECK(q.start == p.start);
    const std::vector<Move> back = time_reverse(*p.board, moves);
    VerifyReport r = verify_solution(q, back);
    CHECK(r.legal);
    CHECK(r.finish_met);
    // Each intermediate position is the complement of one on the original line.
    const auto fwd = jump_positions(*p.board, p.start, moves);
    const auto rev = jump_positions(*p.board, q.start, back);
    REQUIRE(fwd.size() == rev.size());
    for (std::size_t i = 0; i < fwd.size(); ++i) {
      CHECK(rev[i].pegs == (p.board->full() ^ fwd[fwd.size() - 1 - i].pegs));
    }
    CHECK(time_reverse(*p.board, back) == moves);
  }
  CHECK(code_of([] { reversed_problem(catalog::get_problem("problem-1")); }) == "marked-complement");
}

TEST_CASE("solvable everywhere") {
  SolveOptions o;
  EverywhereReport small = solvable_everywhere(shared(generalized_cross(2, 1, 2, 0)), o);
  CHECK(small.complete());
  CHECK(small.all_solvable());

  EverywhereReport french = solvable_everywhere(shared(testing::french()), o);
  CHECK(french.complete());
  for (std::size_t h = 0; h < french.solvable.size(); ++h) {
    CHECK(french.solvable[h] == false);
    CHECK(french.reasons[h] == "class-mismatch");
  }
}

TEST_CASE("hints") {
  auto eng = shared(testing::english());
  Problem p = complement_problem(eng, hole(*eng, "d4"));
  SolveReport line = solve(p);
  REQUIRE(line.outcome == Outcome::solved);

  // One jump from the finish.
  const auto positions = jump_positions(*eng, p.start, line.moves);
  const Position near = positions[positions.size() - 2];
  Hint h = hint(p, near);
  REQUIRE(h.move);
  CHECK(apply_move(*eng, near, *h.move).pegs == p.finish_pegs);

  Hint done = hint(p, Position{p.finish_pegs, {}});
  CHECK_FALSE(done.move);
  CHECK(done.reason == "finished");

  // An extra peg moves the position out of the finish's class.
  Position dead = near;
  for (int h = 0; h < eng->size(); ++h) {
    if (!near.pegs.test(h) && hole_class(*eng, h).bits != 0) {
      dead.pegs.set(h);
      break;
    }
  }
  REQUIRE(dead.pegs.count() == near.pegs.count() + 1);
  Hint d = hint(p, dead);
  CHECK_FALSE(d.move);
  CHECK(d.reason == "class-mismatch");

  // From the start: a move after which the problem is still solvable.
  Hint first = hint(p, p.start);
  REQUIRE(first.move);
  const Position after = apply_move(*eng, p.start, *first.move);
  CHECK(solve(with_start(p, after)).outcome == Outcome::solved);

  // Book lines answer instantly.
  Problem p2 = catalog::get_problem("problem-2");
  std::vector<std::vector<Move>> book;
  for (const auto& f : catalog::get_fixtures("problem-2")) book.push_back(parse_solution(f.text));
  Hint b = hint(p2, p2.start, {}, book);
  REQUIRE(b.move);
  CHECK(format_solution({*b.move}) == "d3-d1");
  const Position next = apply_move(*p2.board, p2.start, *b.move);
  std::vector<Move> rest(book[0].begin() + 1, book[0].end());
  CHECK(verify_solution(with_start(p2, next), rest).ok());
}
