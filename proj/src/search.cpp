#include <algorithm>
#include <array>
#include <bit>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "pegsol/error.hpp"
#include "pegsol/solver.hpp"
#include "search_internal.hpp"

namespace pegsol {

namespace detail {

Limits::Limits(const SolveOptions& opts)
    : max_nodes_(opts.max_nodes),
      max_seconds_(opts.max_seconds),
      token_(opts.stop),
      start_(std::chrono::steady_clock::now()) {}

double Limits::seconds() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void Limits::stop(const std::string& reason) {
  std::lock_guard lock(mu_);
  if (reason_.empty()) reason_ = reason;
  stopped_.store(true, std::memory_order_relaxed);
}

std::string Limits::reason() const {
  std::lock_guard lock(mu_);
  return reason_;
}

bool Limits::exhausted() const { return !reason().empty(); }

bool Limits::charge(std::uint64_t n) {
  const std::uint64_t total = nodes_.fetch_add(n, std::memory_order_relaxed) + n;
  if (stopped()) return true;
  if (max_nodes_ && total >= *max_nodes_) stop("budget");
  else if (max_seconds_ && seconds() >= *max_seconds_) stop("budget");
  else if (token_.stop_requested()) stop("cancelled");
  return stopped();
}

Setup make_setup(const Problem& p, const SolveOptions& opts) {
  Setup s;
  s.problem = &p;
  s.board = p.board.get();
  s.opts = opts;
  const Board& b = *s.board;

  s.symmetries.push_back(0);
  if (opts.use_symmetry) {
    for (int k = 1; k < static_cast<int>(b.symmetries().size()); ++k) {
      const auto& perm = b.symmetries()[k].perm;
      bool keeps = b.transform(p.finish_pegs, k) == p.finish_pegs;
      for (const Mark& m : p.finish_marks) keeps = keeps && perm[m.hole] == m.hole;
      if (keeps) s.symmetries.push_back(k);
    }
  }

  if (opts.use_resource) {
    std::vector<ResourceCount> candidates = opts.counts;
    if (p.finish_pegs.count() == 1) {
      int survivor = 0;
      p.finish_pegs.for_each([&](int h) { survivor = h; });
      candidates.push_back(golden_count(b, b.cell(survivor)));
    }
    for (ResourceCount& rc : candidates) {
      if (static_cast<int>(rc.weights.size()) != b.size()) continue;
      if (!check_resource_count(b, rc).empty()) continue;
      if (static_cast<int>(s.counts.size()) == kMaxCounts) break;
      s.targets.push_back(resource_value(rc, p.finish_pegs));
      s.counts.push_back(std::move(rc));
    }
  }

  if (opts.use_merson) {
    if (!opts.regions) throw Error("bad-regions", "Merson pruning needs a region decomposition");
    validate_decomposition(b, *opts.regions);
    s.merson = true;
    s.regions = opts.regions->regions;
    s.region_of = opts.regions->region_of;
  }

  for (const Mark& m : p.start.marks) {
    s.mark_ids.push_back(m.id);
    int at = -1;
    for (const Mark& f : p.finish_marks) {
      if (f.id == m.id) at = f.hole;
    }
    s.finish_mark_at.push_back(at);
  }
  s.table_usable = opts.use_table && static_cast<int>(s.mark_ids.size()) <= kMaxTableMarks;
  return s;
}

std::string static_refutation(const Setup& s) {
  const Problem& p = *s.problem;
  if (s.opts.use_class && !class_feasible(p)) return "class-mismatch";
  for (std::size_t i = 0; i < s.counts.size(); ++i) {
    if (resource_value(s.counts[i], p.start.pegs) < s.targets[i]) {
      return "resource-deficit:" + s.counts[i].name;
    }
  }
  return "";
}

namespace {

struct State {
  PegSet pegs;
  std::array<std::int8_t, 9> marks{};  // hole per mark index
  std::int16_t chain = -1;             // landing cell of the move in progress
  std::int16_t chain_len = 0;
  bool final_move = false;
  std::array<GoldenNumber, kMaxCounts> value{};
};

struct Step {
  int jump;
  bool new_move;
};

class Engine {
 public:
  Engine(const Setup& s, Limits& limits, TranspositionTable* table)
      : s_(s), b_(*s.board), limits_(limits), table_(s.table_usable ? table : nullptr) {
    const int nc = static_cast<int>(s_.counts.size());
    delta_.resize(b_.jumps().size());
    for (std::size_t j = 0; j < b_.jumps().size(); ++j) {
      const Jump& jp = b_.jumps()[j];
      for (int i = 0; i < nc; ++i) {
        const auto& w = s_.counts[i].weights;
        delta_[j][i] = w[jp.to] - w[jp.from] - w[jp.over];
      }
    }
    min_sweep_ = s_.problem->min_final_sweep.value_or(0);
  }

  ~Engine() { limits_.charge(pending_); }

  State root(const Position& start) const {
    State st;
    st.pegs = start.pegs;
    for (std::size_t i = 0; i < start.marks.size(); ++i) st.marks[i] = static_cast<std::int8_t>(start.marks[i].hole);
    for (std::size_t i = 0; i < s_.counts.size(); ++i) st.value[i] = resource_value(s_.counts[i], start.pegs);
    return st;
  }

  bool goal(const State& st) const {
    if (st.pegs != s_.problem->finish_pegs) return false;
    for (std::size_t i = 0; i < s_.mark_ids.size(); ++i) {
      if (s_.finish_mark_at[i] >= 0 && st.marks[i] != s_.finish_mark_at[i]) return false;
    }
    return st.chain_len >= min_sweep_;
  }

  // True when no continuation can reach the finish.
  bool dead(const State& st) const {
    if (st.pegs.count() <= s_.problem->finish_pegs.count()) return true;  // and not a goal
    for (std::size_t i = 0; i < s_.counts.size(); ++i) {
      if (st.value[i] < s_.targets[i]) return true;
    }
    return false;
  }

  int mark_at(const State& st, int hole) const {
    for (std::size_t i = 0; i < s_.mark_ids.size(); ++i) {
      if (st.marks[i] == hole) return static_cast<int>(i);
    }
    return -1;
  }

  bool legal(const State& st, const Jump& j) const {
    if (!st.pegs.test(j.over) || st.pegs.test(j.to)) return false;
    return s_.mark_ids.empty() || mark_at(st, j.over) < 0;
  }

  State play(const State& st, int ji, bool new_move) const {
    State c = st;
    const Jump& j = b_.jumps()[ji];
    c.pegs.reset(j.from);
    c.pegs.reset(j.over);
    c.pegs.set(j.to);
    for (std::size_t i = 0; i < s_.counts.size(); ++i) c.value[i] += delta_[ji][i];
    const int m = s_.mark_ids.empty() ? -1 : mark_at(st, j.from);
    if (m >= 0) c.marks[m] = static_cast<std::int8_t>(j.to);
    if (new_move) {
      c.chain_len = 1;
      c.final_move = s_.problem->marks_immobile && m >= 0;
    } else {
      ++c.chain_len;
    }
    c.chain = static_cast<std::int16_t>(j.to);
    return c;
  }

  int open_regions(const State& st) const {
    const int skip = st.chain >= 0 ? s_.region_of[st.chain] : -1;
    int n = 0;
    for (int r = 0; r < static_cast<int>(s_.regions.size()); ++r) {
      if (r != skip && st.pegs.contains_all(s_.regions[r]) &&
          !s_.problem->finish_pegs.contains_all(s_.regions[r])) {
        ++n;
      }
    }
    return n;
  }

  std::vector<Step> root_steps(const State& st, bool moves_mode, int budget) const {
    std::vector<Step> out;
    if (st.chain >= 0) {
      for (int ji : b_.jumps_from(st.chain)) {
        if (legal(st, b_.jumps()[ji])) out.push_back({ji, false});
      }
    }
    if (moves_mode && (budget == 0 || st.final_move)) return out;
    for_each_peg(st.pegs, [&](int h) {
      if (h == st.chain || (s_.frozen_marks && mark_at(st, h) >= 0)) return;
      for (int ji : b_.jumps_from(h)) {
        if (legal(st, b_.jumps()[ji])) out.push_back({ji, true});
      }
    });
    return out;
  }

  // Move-budgeted search: `budget` more moves may be started.
  bool search_moves(const State& st, int budget) {
    if (tick()) return false;
    if (goal(st)) return true;
    if (dead(st)) return false;
    if (st.chain < 0 && budget == 0) return false;
    if (s_.merson && open_regions(st) > budget) return false;
    TableKey key;
    if (table_) {
      key = make_key(st, true);
      if (table_->probe(key) >= budget) {
        ++hits;
        return false;
      }
    }
    if (st.chain >= 0) {
      for (int ji : b_.jumps_from(st.chain)) {
        if (!legal(st, b_.jumps()[ji])) continue;
        path.push_back(ji);
        if (search_moves(play(st, ji, false), budget)) return true;
        path.pop_back();
      }
    }
    if (budget > 0 && !st.final_move) {
      bool found = false;
      for_each_peg_until(st.pegs, [&](int h) {
        if (h == st.chain || (s_.frozen_marks && !s_.mark_ids.empty() && mark_at(st, h) >= 0)) return false;
        for (int ji : b_.jumps_from(h)) {
          if (!legal(st, b_.jumps()[ji])) continue;
          path.push_back(ji);
          if (search_moves(play(st, ji, true), budget - 1)) return found = true;
          path.pop_back();
        }
        return false;
      });
      if (found) return true;
    }
    if (limits_.stopped()) return false;
    if (table_) table_->store(key, budget);
    return false;
  }

  // Unlimited moves; jumps from the last landing cell are tried first.
  bool search_jumps(const State& st) {
    if (tick()) return false;
    if (goal(st)) return true;
    if (dead(st)) return false;
    TableKey key;
    if (table_) {
      key = make_key(st, false);
      if (table_->probe(key) >= 0) {
        ++hits;
        return false;
      }
    }
    if (st.chain >= 0) {
      for (int ji : b_.jumps_from(st.chain)) {
        if (!legal(st, b_.jumps()[ji])) continue;
        path.push_back(ji);
        if (search_jumps(play(st, ji, false))) return true;
        path.pop_back();
      }
    }
    bool found = false;
    for_each_peg_until(st.pegs, [&](int h) {
      if (h == st.chain) return false;
      for (int ji : b_.jumps_from(h)) {
        if (!legal(st, b_.jumps()[ji])) continue;
        path.push_back(ji);
        if (search_jumps(play(st, ji, true))) return found = true;
        path.pop_back();
      }
      return false;
    });
    if (found) return true;
    if (limits_.stopped()) return false;
    if (table_) table_->store(key, TranspositionTable::kUnbounded);
    return false;
  }

  std::vector<int> path;
  std::uint64_t hits = 0;

 private:
  template <class F>
  static void for_each_peg(const PegSet& pegs, F&& f) {
    pegs.for_each(f);
  }

  // Calls f(hole) in hole order until it returns true.
  template <class F>
  static void for_each_peg_until(const PegSet& pegs, F&& f) {
    for (int w = 0; w < 2; ++w) {
      for (std::uint64_t x = pegs.word(w); x != 0; x &= x - 1) {
        if (f(w * 64 + std::countr_zero(x))) return;
      }
    }
  }

  bool tick() {
    if (++pending_ >= 4096) {
      const std::uint64_t n = pending_;
      pending_ = 0;
      return limits_.charge(n);
    }
    return limits_.stopped();
  }

  std::uint64_t aux(const State& st, const std::vector<int>* perm, bool moves_mode) const {
    auto img = [&](int h) { return perm ? (*perm)[h] : h; };
    std::uint64_t a = 0xFF;
    if (moves_mode && st.chain >= 0) a = static_cast<std::uint64_t>(img(st.chain));
    if (moves_mode && min_sweep_ > 0) a |= static_cast<std::uint64_t>(std::min<int>(st.chain_len, min_sweep_)) << 8;
    if (st.final_move) a |= std::uint64_t{1} << 16;
    for (std::size_t i = 0; i < s_.mark_ids.size(); ++i) {
      a |= static_cast<std::uint64_t>(img(st.marks[i])) << (17 + 8 * i);
    }
    return a;
  }

  TableKey make_key(const State& st, bool moves_mode) const {
    PegSet best = st.pegs;
    std::uint64_t best_aux = aux(st, nullptr, moves_mode);
    for (std::size_t i = 1; i < s_.symmetries.size(); ++i) {
      const int k = s_.symmetries[i];
      const PegSet img = b_.transform(st.pegs, k);
      if (img < best) {
        best = img;
        best_aux = aux(st, &b_.symmetries()[k].perm, moves_mode);
      } else if (img == best) {
        best_aux = std::min(best_aux, aux(st, &b_.symmetries()[k].perm, moves_mode));
      }
    }
    return {best.word(0), best.word(1), best_aux};
  }

  const Setup& s_;
  const Board& b_;
  Limits& limits_;
  TranspositionTable* table_;
  std::vector<std::array<GoldenNumber, kMaxCounts>> delta_;
  int min_sweep_ = 0;
  std::uint64_t pending_ = 0;
};

std::vector<Move> moves_of(const Board& b, const std::vector<int>& path) {
  std::vector<Jump> jumps;
  for (int ji : path) jumps.push_back(b.jumps()[ji]);
  return group_jumps(b, jumps);
}

struct RunResult {
  bool found = false;
  std::vector<int> path;
  std::uint64_t hits = 0;
};

// One search from `start`, split over root steps when threads > 1.
RunResult run(const Setup& s, Limits& limits, TranspositionTable* table, const Position& start,
              bool moves_mode, int budget) {
  RunResult out;
  const int threads = std::max(1, s.opts.threads);
  if (threads == 1) {
    Engine e(s, limits, table);
    const State root = e.root(start);
    out.found = moves_mode ? e.search_moves(root, budget) : e.search_jumps(root);
    out.path = e.path;
    out.hits = e.hits;
    return out;
  }

  Engine probe(s, limits, table);
  const State root = probe.root(start);
  if (probe.goal(root)) {
    out.found = true;
    return out;
  }
  const std::vector<Step> steps = probe.root_steps(root, moves_mode, budget);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::atomic<std::uint64_t> hits{0};
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        Engine e(s, limits, table);
        for (std::size_t i; (i = next.fetch_add(1)) < steps.size() && !limits.stopped();) {
          const Step& st = steps[i];
          const State child = e.play(root, st.jump, st.new_move);
          e.path.assign(1, st.jump);
          const bool ok = moves_mode ? e.search_moves(child, budget - (st.new_move ? 1 : 0)) : e.search_jumps(child);
          if (ok) {
            std::lock_guard lock(mu);
            if (!out.found) {
              out.found = true;
              out.path = e.path;
            }
            limits.finish();
          }
        }
        hits += e.hits;
      });
    }
  }
  out.hits = hits;
  return out;
}

void check_options(const SolveOptions& opts) {
  if ((opts.max_nodes && *opts.max_nodes == 0) || (opts.max_seconds && *opts.max_seconds <= 0)) {
    throw Error("bad-budget", "search budget must be positive");
  }
  if (opts.threads < 1) throw Error("bad-budget", "thread count must be positive");
}

SolveReport finish_report(SolveReport r, const Limits& limits, std::uint64_t hits) {
  r.stats.nodes = limits.nodes();
  r.stats.table_hits = hits;
  r.stats.seconds = limits.seconds();
  return r;
}

// Trivial outcomes shared by solve and shortest_solution.
std::optional<SolveReport> settle_early(const Setup& s) {
  const Problem& p = *s.problem;
  SolveReport r;
  if (finish_met(p, p.start) && p.min_final_sweep.value_or(0) <= 0) {
    r.outcome = Outcome::solved;
    r.optimal = true;
    return r;
  }
  if (std::string why = static_refutation(s); !why.empty()) {
    r.outcome = Outcome::unsolvable;
    r.reason = why;
    return r;
  }
  return std::nullopt;
}

int move_cap(const Problem& p) {
  const int jumps = p.start.pegs.count() - p.finish_pegs.count();
  return p.max_moves ? std::min(*p.max_moves, jumps) : jumps;
}

void check_solution(const Problem& p, const std::vector<Move>& moves) {
  const VerifyReport v = verify_solution(p, moves);
  if (!v.ok()) throw Error("internal", "search produced an invalid solution: " + v.error);
}

SolveReport solve_presweep(const Setup& s, Limits& limits);

}  // namespace

}  // namespace detail

using detail::Limits;
using detail::Setup;

SolveReport solve(const Problem& p, const SolveOptions& opts) {
  detail::check_options(opts);
  validate_problem(p);
  const Setup s = detail::make_setup(p, opts);
  Limits limits(opts);
  if (auto early = detail::settle_early(s)) return detail::finish_report(*early, limits, 0);

  const bool constrained = p.max_moves || p.min_final_sweep || p.marks_immobile;
  Strategy strategy = opts.strategy;
  if (strategy == Strategy::automatic) strategy = constrained ? Strategy::moves : Strategy::jumps;
  if (constrained && strategy != Strategy::moves) {
    throw Error("bad-strategy", "move constraints need the move-level search");
  }
  if (strategy == Strategy::bidirectional && !detail::layered_eligible(p)) {
    throw Error("bad-strategy", "the bidirectional search needs <= 64 holes and no marks");
  }

  SolveReport r;
  if (constrained && opts.presweep_first && p.min_final_sweep) {
    r = detail::solve_presweep(s, limits);
    if (r.outcome == Outcome::solved) detail::check_solution(p, r.moves);
    return detail::finish_report(r, limits, 0);
  }

  if (strategy != Strategy::bidirectional) {
    // Layered search is a fallback: a short depth-first probe settles most
    // problems without enumerating whole layers.
    const bool probe = opts.strategy == Strategy::automatic && !constrained && detail::layered_eligible(p);
    SolveOptions probe_opts = opts;
    if (probe) probe_opts.max_nodes = std::min<std::uint64_t>(opts.max_nodes.value_or(~0ull), 60'000'000);
    Limits probe_limits(probe_opts);
    Limits& use = probe ? probe_limits : limits;
    TranspositionTable table(opts.use_table ? opts.table_entries : 4);
    const bool moves_mode = strategy == Strategy::moves;
    const detail::RunResult run = detail::run(s, use, &table, p.start, moves_mode, moves_mode ? detail::move_cap(p) : 0);
    if (probe) limits.charge(probe_limits.nodes());
    if (run.found) {
      r.outcome = Outcome::solved;
      r.moves = detail::moves_of(*p.board, run.path);
      detail::check_solution(p, r.moves);
      return detail::finish_report(r, limits, run.hits);
    }
    if (!use.exhausted()) {
      r.outcome = Outcome::unsolvable;
      r.reason = "exhaustive-search";
      return detail::finish_report(r, limits, run.hits);
    }
    if (!probe || probe_limits.reason() != "budget" || limits.stopped() ||
        (opts.max_nodes && *opts.max_nodes <= probe_limits.nodes())) {
      r.outcome = Outcome::exhausted;
      r.reason = use.reason();
      return detail::finish_report(r, limits, run.hits);
    }
  }

  const detail::LayeredResult lr = detail::solve_layered(s, limits);
  r.outcome = lr.outcome;
  r.reason = lr.reason;
  r.moves = lr.moves;
  if (r.outcome == Outcome::solved) {
    detail::check_solution(p, r.moves);
    r.optimal = true;
    r.lower_bound = static_cast<int>(r.moves.size());
  }
  return detail::finish_report(r, limits, 0);
}

SolveReport shortest_solution(const Problem& p, const SolveOptions& opts) {
  detail::check_options(opts);
  validate_problem(p);
  const Setup s = detail::make_setup(p, opts);
  Limits limits(opts);
  if (auto early = detail::settle_early(s)) return detail::finish_report(*early, limits, 0);

  SolveReport r;
  if (opts.strategy == Strategy::bidirectional) {
    const bool constrained = p.max_moves || p.min_final_sweep || p.marks_immobile;
    if (constrained || !detail::layered_eligible(p)) {
      throw Error("bad-strategy", "the bidirectional search needs <= 64 holes, no marks and no constraints");
    }
    const detail::LayeredResult lr = detail::solve_layered(s, limits);
    r.outcome = lr.outcome;
    r.reason = lr.reason;
    r.moves = lr.moves;
    if (r.outcome == Outcome::solved) {
      detail::check_solution(p, r.moves);
      r.optimal = true;
      r.lower_bound = static_cast<int>(r.moves.size());
    }
    return detail::finish_report(r, limits, 0);
  }

  TranspositionTable table(opts.use_table ? opts.table_entries : 4);
  detail::Engine probe(s, limits, nullptr);
  int lower = 1;
  if (s.merson) lower = std::max(lower, probe.open_regions(probe.root(p.start)));
  const int cap = detail::move_cap(p);
  r.lower_bound = lower;
  r.stats.depth_completed = lower - 1;
  std::uint64_t hits = 0;
  for (int d = lower; d <= cap; ++d) {
    const detail::RunResult run = detail::run(s, limits, &table, p.start, true, d);
    hits += run.hits;
    if (run.found) {
      r.outcome = Outcome::solved;
      r.moves = detail::moves_of(*p.board, run.path);
      detail::check_solution(p, r.moves);
      r.optimal = static_cast<int>(r.moves.size()) == d;
      r.lower_bound = d;
      return detail::finish_report(r, limits, hits);
    }
    if (limits.exhausted()) {
      r.outcome = Outcome::exhausted;
      r.reason = limits.reason();
      return detail::finish_report(r, limits, hits);
    }
    r.stats.depth_completed = d;
    r.lower_bound = d + 1;
  }
  r.outcome = Outcome::unsolvable;
  r.reason = "exhaustive-search";
  return detail::finish_report(r, limits, hits);
}

bool EverywhereReport::all_solvable() const {
  for (const auto& v : solvable) {
    if (!v || !*v) return false;
  }
  return !solvable.empty();
}

bool EverywhereReport::complete() const {
  for (const auto& v : solvable) {
    if (!v) return false;
  }
  return true;
}

EverywhereReport solvable_everywhere(const std::shared_ptr<const Board>& board, const SolveOptions& opts) {
  EverywhereReport out;
  out.solvable.resize(board->size());
  out.reasons.resize(board->size());
  for (int h = 0; h < board->size(); ++h) {
    if (out.solvable[h] || !out.reasons[h].empty()) continue;
    const SolveReport r = solve(complement_problem(board, h), opts);
    std::optional<bool> verdict;
    if (r.outcome == Outcome::solved) verdict = true;
    if (r.outcome == Outcome::unsolvable) verdict = false;
    const std::string reason = r.outcome == Outcome::solved ? "solved" : r.reason;
    for (const Symmetry& sym : board->symmetries()) {
      out.solvable[sym.perm[h]] = verdict;
      out.reasons[sym.perm[h]] = reason;
    }
  }
  return out;
}

Hint hint(const Problem& p, const Position& pos, const SolveOptions& opts,
          const std::vector<std::vector<Move>>& book) {
  Hint out;
  Problem sub = with_start(p, pos);
  sub.max_moves.reset();
  if (finish_met(sub, pos) && p.min_final_sweep.value_or(0) <= 0) {
    out.reason = "finished";
    return out;
  }
  for (const auto& line : book) {
    Position at = p.start;
    for (const Move& m : line) {
      if (at == pos) {
        out.move = m;
        return out;
      }
      try {
        at = apply_move(*p.board, at, m);
      } catch (const Error&) {
        break;
      }
    }
  }
  SolveOptions o = opts;
  if (!o.max_nodes && !o.max_seconds) o.max_nodes = 200'000;
  if (o.strategy == Strategy::automatic) o.strategy = (sub.min_final_sweep || sub.marks_immobile) ? Strategy::moves : Strategy::jumps;
  const SolveReport r = solve(sub, o);
  if (r.outcome == Outcome::solved && !r.moves.empty()) {
    out.move = r.moves.front();
  } else {
    out.reason = r.outcome == Outcome::unsolvable ? r.reason : "no-move-found:" + r.reason;
  }
  return out;
}

namespace detail {
namespace {

// Walks final sweeps backwards from the finish: the mover sits on `at`; a
// reverse jump moves it to `from` and restores the peg it jumped. Every walk
// of at least min_final_sweep jumps gives a candidate pre-sweep position,
// which is then solved from the start in one move less.
struct Presweep {
  const Setup& s;
  Limits& limits;
  const Board& b;
  int want;
  std::optional<std::vector<Move>> result;
  TranspositionTable table;
  std::set<std::pair<PegSet, std::vector<int>>> tried;

  bool walk(const Position& pos, int at, std::vector<Cell>& rev_path) {
    if (limits.stopped()) return false;
    if (static_cast<int>(rev_path.size()) - 1 >= want && try_candidate(pos, rev_path)) return true;
    if (pos.pegs.count() >= s.problem->start.pegs.count()) return false;
    for (const Jump& j : b.jumps()) {
      if (j.to != at || pos.pegs.test(j.from) || pos.pegs.test(j.over)) continue;
      Position next = pos;
      next.pegs.reset(j.to);
      next.pegs.set(j.over);
      next.pegs.set(j.from);
      for (Mark& m : next.marks) {
        if (m.hole == at) m.hole = j.from;
      }
      rev_path.push_back(b.cell(j.from));
      if (walk(next, j.from, rev_path)) return true;
      rev_path.pop_back();
    }
    return false;
  }

  bool try_candidate(const Position& pre, const std::vector<Cell>& rev_path) {
    const Problem& p = *s.problem;
    std::vector<int> mark_holes;
    for (const Mark& m : pre.marks) mark_holes.push_back(m.hole);
    if (!tried.emplace(pre.pegs, std::move(mark_holes)).second) return false;
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
      if (resource_value(s.counts[i], p.start.pegs) < resource_value(s.counts[i], pre.pegs)) return false;
    }
    if (s.opts.use_class && !p.board->rule().diagonal &&
        !(position_class(b, p.start.pegs) == position_class(b, pre.pegs))) {
      return false;
    }
    Problem sub = p;
    sub.finish_pegs = pre.pegs;
    sub.finish_marks = pre.marks;
    sub.min_final_sweep.reset();
    sub.marks_immobile = false;
    if (p.max_moves) sub.max_moves = *p.max_moves - 1;
    SolveOptions o = s.opts;
    o.presweep_first = false;
    o.strategy = Strategy::moves;
    Setup sub_setup = make_setup(sub, o);
    // Only the final mover may carry a mark anywhere.
    sub_setup.frozen_marks = p.marks_immobile;
    if (!static_refutation(sub_setup).empty()) return false;
    table.clear();
    const RunResult run = detail::run(sub_setup, limits, &table, sub.start, true, move_cap(sub));
    if (!run.found) return false;
    std::vector<Move> moves = moves_of(b, run.path);
    moves.push_back(Move{{rev_path.rbegin(), rev_path.rend()}});
    result = std::move(moves);
    return true;
  }
};

SolveReport solve_presweep(const Setup& s, Limits& limits) {
  const Problem& p = *s.problem;
  SolveReport r;
  // Each candidate needs a fresh table, so keep it small.
  const std::size_t entries = s.opts.use_table ? std::min<std::size_t>(s.opts.table_entries, 1 << 16) : 4;
  Presweep ps{s, limits, *p.board, *p.min_final_sweep, std::nullopt, TranspositionTable(entries), {}};
  const Position fin{p.finish_pegs, p.finish_marks};
  bool found = false;
  p.finish_pegs.for_each([&](int end) {
    if (found) return;
    std::vector<Cell> rev{p.board->cell(end)};
    found = ps.walk(fin, end, rev);
  });
  if (found) {
    r.outcome = Outcome::solved;
    r.moves = *ps.result;
  } else if (limits.exhausted()) {
    r.outcome = Outcome::exhausted;
    r.reason = limits.reason();
  } else {
    r.outcome = Outcome::unsolvable;
    r.reason = "exhaustive-search";
  }
  return r;
}

}  // namespace
}  // namespace detail

}  // namespace pegsol
