#include <algorithm>
#include <bit>
#include <cmath>

#include "pegsol/error.hpp"
#include "search_internal.hpp"

// Layered search over boards of at most 64 holes. Positions are u64 masks.
//
// F_k holds canonical forms of the positions k jumps from the start, B_k the
// canonical forms of positions k jumps from comp(finish). A jump P -> P' is a
// jump comp(P') -> comp(P), so P reaches the finish in m jumps iff comp(P)
// lies in B_m. Both sides are canonical under symmetries that fix the finish,
// which keeps both membership tests exact.
//
// The two sides meet at layer a = J/2. The positions lying on some solution
// are then extended to every layer, and a move-count DP over the actual
// positions from the start picks a move-minimal jump sequence.

namespace pegsol::detail {

namespace {

using Layer = std::vector<std::uint64_t>;

constexpr std::size_t kChunk = std::size_t{1} << 24;

struct MaskJump {
  std::uint64_t from, over, to;
  int f, o, t;
};

struct DpEntry {
  std::uint64_t pos;
  std::uint64_t landings;  // landing holes reachable at `cost`
  int cost;
};

bool contains(const Layer& l, std::uint64_t x) { return std::binary_search(l.begin(), l.end(), x); }

void merge_into(Layer& acc, Layer& chunk) {
  std::sort(chunk.begin(), chunk.end());
  chunk.erase(std::unique(chunk.begin(), chunk.end()), chunk.end());
  const std::size_t mid = acc.size();
  acc.insert(acc.end(), chunk.begin(), chunk.end());
  std::inplace_merge(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(mid), acc.end());
  acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
  chunk.clear();
}

class Layered {
 public:
  Layered(const Setup& s, Limits& limits) : s_(s), b_(*s.board), limits_(limits) {
    full_ = b_.full().word(0);
    from_.resize(b_.size());
    to_.resize(b_.size());
    for (const Jump& j : b_.jumps()) {
      const int k = static_cast<int>(jumps_.size());
      jumps_.push_back({bit(j.from), bit(j.over), bit(j.to), j.from, j.over, j.to});
      from_[j.from].push_back(k);
      to_[j.to].push_back(k);
    }
    for (std::size_t i = 0; i < s_.counts.size(); ++i) {
      std::vector<double> w;
      for (const GoldenNumber& g : s_.counts[i].weights) w.push_back(g.approx());
      weights_.push_back(std::move(w));
      targets_.push_back(s_.targets[i].approx());
    }
  }

  LayeredResult run() {
    LayeredResult out;
    const std::uint64_t start = s_.problem->start.pegs.word(0);
    const std::uint64_t finish = s_.problem->finish_pegs.word(0);
    const int total = std::popcount(start) - std::popcount(finish);
    if (total <= 0) return unsolvable();
    const int a = total / 2;
    const int nb = total - a;

    std::vector<Layer> f(a + 1);
    if (viable(start)) f[0].push_back(canon(start));
    for (int k = 0; k < a; ++k) {
      if (!expand(f[k], f[k + 1], false)) return stopped();
      if (f[k + 1].empty()) return unsolvable();
    }

    const std::uint64_t back_root = canon(full_ ^ finish);
    const bool shared = !f[0].empty() && f[0][0] == back_root && nb - 1 <= a;
    std::vector<Layer> b_own;
    std::vector<const Layer*> back(nb);
    if (shared) {
      for (int k = 0; k < nb; ++k) back[k] = &f[k];
    } else {
      b_own.resize(nb);
      b_own[0].push_back(back_root);
      for (int k = 0; k + 1 < nb; ++k) {
        if (!expand(b_own[k], b_own[k + 1], true)) return stopped();
        if (b_own[k + 1].empty()) return unsolvable();
      }
      for (int k = 0; k < nb; ++k) back[k] = &b_own[k];
    }

    // Solution layers, canonical.
    std::vector<Layer> live(total + 1);
    for (std::uint64_t p : f[a]) {
      bool hit = false;
      parents(full_ ^ p, [&](std::uint64_t q) { hit = hit || contains(*back[nb - 1], canon(q)); });
      if (hit) live[a].push_back(p);
    }
    if (live[a].empty()) return unsolvable();
    for (int k = a; k > 0; --k) {
      for (std::uint64_t q : f[k - 1]) {
        bool hit = false;
        children(q, [&](std::uint64_t c) { hit = hit || contains(live[k], canon(c)); });
        if (hit) live[k - 1].push_back(q);
      }
      if (limits_.charge(f[k - 1].size())) return stopped();
    }
    for (int k = a; k < total; ++k) {
      Layer chunk;
      const Layer& need = *back[total - k - 1];
      for (std::uint64_t p : live[k]) {
        children(p, [&](std::uint64_t c) {
          if (contains(need, canon(full_ ^ c))) chunk.push_back(canon(c));
        });
      }
      merge_into(live[k + 1], chunk);
      if (limits_.charge(live[k].size())) return stopped();
    }
    f.clear();
    f.shrink_to_fit();
    b_own.clear();
    b_own.shrink_to_fit();

    // Move-count DP over the actual positions, start first.
    std::vector<std::vector<DpEntry>> dp(total + 1);
    dp[0].push_back({start, 0, 0});
    for (int k = 0; k < total; ++k) {
      std::vector<DpEntry> next;
      for (const DpEntry& e : dp[k]) {
        for_children(e.pos, [&](const MaskJump& j) {
          const std::uint64_t c = e.pos ^ j.from ^ j.over ^ j.to;
          if (!contains(live[k + 1], canon(c))) return;
          next.push_back({c, j.to, e.cost + ((e.landings & j.from) ? 0 : 1)});
        });
      }
      std::sort(next.begin(), next.end(), [](const DpEntry& x, const DpEntry& y) {
        return x.pos != y.pos ? x.pos < y.pos : x.cost < y.cost;
      });
      std::vector<DpEntry> merged;
      for (const DpEntry& e : next) {
        if (!merged.empty() && merged.back().pos == e.pos) {
          if (merged.back().cost == e.cost) merged.back().landings |= e.landings;
          continue;
        }
        merged.push_back(e);
      }
      dp[k + 1] = std::move(merged);
      Layer().swap(live[k + 1]);
      if (limits_.charge(dp[k].size())) return stopped();
    }

    const DpEntry* end = find(dp[total], finish);
    if (!end) return unsolvable();
    std::vector<Jump> jumps;
    std::uint64_t x = end->pos;
    int land = std::countr_zero(end->landings);
    int cost = end->cost;
    for (int k = total; k > 0; --k) {
      bool stepped = false;
      for (int ji : to_[land]) {
        const MaskJump& j = jumps_[ji];
        if (!(x & j.to) || (x & j.from) || (x & j.over)) continue;
        const DpEntry* q = find(dp[k - 1], x ^ j.from ^ j.over ^ j.to);
        if (!q) continue;
        const bool chained = (q->landings & j.from) != 0;
        if (q->cost + (chained ? 0 : 1) != cost) continue;
        jumps.push_back(b_.jumps()[ji]);
        x = q->pos;
        cost = q->cost;
        land = chained ? j.f : (q->landings ? std::countr_zero(q->landings) : 0);
        stepped = true;
        break;
      }
      if (!stepped) throw Error("internal", "layered reconstruction lost its path");
    }
    std::reverse(jumps.begin(), jumps.end());
    out.outcome = Outcome::solved;
    out.moves = group_jumps(b_, jumps);
    return out;
  }

 private:
  static std::uint64_t bit(int h) { return std::uint64_t{1} << h; }

  static LayeredResult unsolvable() { return {Outcome::unsolvable, "exhaustive-search", {}}; }
  LayeredResult stopped() const { return {Outcome::exhausted, limits_.reason(), {}}; }

  static const DpEntry* find(const std::vector<DpEntry>& layer, std::uint64_t pos) {
    auto it = std::lower_bound(layer.begin(), layer.end(), pos,
                               [](const DpEntry& e, std::uint64_t p) { return e.pos < p; });
    return it != layer.end() && it->pos == pos ? &*it : nullptr;
  }

  std::uint64_t canon(std::uint64_t x) const {
    PegSet p;
    p.set_word(0, x);
    std::uint64_t best = x;
    for (std::size_t i = 1; i < s_.symmetries.size(); ++i) {
      best = std::min(best, b_.transform(p, s_.symmetries[i]).word(0));
    }
    return best;
  }

  // Every count must still be able to pay for the finish.
  bool viable(std::uint64_t pegs) const {
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      double v = 0;
      for (std::uint64_t x = pegs; x; x &= x - 1) v += weights_[i][std::countr_zero(x)];
      if (v < targets_[i] - 1e-9) return false;
      if (v <= targets_[i] + 1e-9) {
        PegSet p;
        p.set_word(0, pegs);
        if (resource_value(s_.counts[i], p) < s_.targets[i]) return false;
      }
    }
    return true;
  }

  template <class F>
  void for_children(std::uint64_t p, F&& f) const {
    const std::uint64_t empty = full_ & ~p;
    if (std::popcount(empty) < std::popcount(p)) {
      for (std::uint64_t e = empty; e; e &= e - 1) {
        for (int ji : to_[std::countr_zero(e)]) {
          const MaskJump& j = jumps_[ji];
          if ((p & j.from) && (p & j.over)) f(j);
        }
      }
    } else {
      for (std::uint64_t e = p; e; e &= e - 1) {
        for (int ji : from_[std::countr_zero(e)]) {
          const MaskJump& j = jumps_[ji];
          if ((p & j.over) && !(p & j.to)) f(j);
        }
      }
    }
  }

  template <class F>
  void children(std::uint64_t p, F&& f) const {
    for_children(p, [&](const MaskJump& j) { f(p ^ j.from ^ j.over ^ j.to); });
  }

  // Positions with a jump leading to x.
  template <class F>
  void parents(std::uint64_t x, F&& f) const {
    for (std::uint64_t e = x; e; e &= e - 1) {
      for (int ji : to_[std::countr_zero(e)]) {
        const MaskJump& j = jumps_[ji];
        if (!(x & j.from) && !(x & j.over)) f(x ^ j.from ^ j.over ^ j.to);
      }
    }
  }

  // Backward layers hold complements, so their filter applies to comp(c).
  bool expand(const Layer& in, Layer& out, bool backward) {
    Layer chunk;
    chunk.reserve(std::min<std::size_t>(kChunk, in.size() * 4 + 16));
    std::uint64_t pending = 0;
    for (std::uint64_t p : in) {
      children(p, [&](std::uint64_t c) {
        if (!viable(backward ? full_ ^ c : c)) return;
        chunk.push_back(canon(c));
        if (chunk.size() >= kChunk) merge_into(out, chunk);
      });
      if (++pending == 4096) {
        pending = 0;
        if (limits_.charge(4096)) return false;
      }
    }
    merge_into(out, chunk);
    return !limits_.charge(pending);
  }

  const Setup& s_;
  const Board& b_;
  Limits& limits_;
  std::uint64_t full_ = 0;
  std::vector<MaskJump> jumps_;
  std::vector<std::vector<int>> from_, to_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> targets_;
};

}  // namespace

bool layered_eligible(const Problem& p) {
  return p.board->size() <= 64 && p.start.marks.empty() && p.finish_marks.empty() && !p.max_moves &&
         !p.min_final_sweep && !p.marks_immobile;
}

LayeredResult solve_layered(const Setup& s, Limits& limits) {
  if (!layered_eligible(*s.problem)) throw Error("bad-strategy", "problem is not eligible for the layered search");
  return Layered(s, limits).run();
}

}  // namespace pegsol::detail
