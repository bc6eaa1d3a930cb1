#pragma once

#include <atomic>
#include <chrono>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "pegsol/solver.hpp"
#include "pegsol/transposition.hpp"

namespace pegsol::detail {

inline constexpr int kMaxCounts = 8;
inline constexpr int kMaxTableMarks = 3;

// Node and time limits plus cancellation, shared by all workers of a search.
class Limits {
 public:
  explicit Limits(const SolveOptions& opts);

  // Adds `n` nodes to the shared total; true once the search must stop.
  bool charge(std::uint64_t n);
  bool stopped() const { return stopped_.load(std::memory_order_relaxed); }
  void stop(const std::string& reason);
  // Halts the other workers without marking the search as exhausted.
  void finish() { stopped_.store(true, std::memory_order_relaxed); }
  std::string reason() const;
  bool exhausted() const;

  std::uint64_t nodes() const { return nodes_.load(std::memory_order_relaxed); }
  double seconds() const;

 private:
  std::optional<std::uint64_t> max_nodes_;
  std::optional<double> max_seconds_;
  std::stop_token token_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stopped_{false};
  mutable std::mutex mu_;
  std::string reason_;
};

struct Setup {
  const Problem* problem = nullptr;
  const Board* board = nullptr;
  SolveOptions opts;

  std::vector<int> symmetries;  // indices preserving the finish; identity first
  std::vector<ResourceCount> counts;
  std::vector<GoldenNumber> targets;  // value of the finish per count

  bool merson = false;
  std::vector<PegSet> regions;
  std::vector<int> region_of;

  std::vector<int> mark_ids;        // mark index -> id
  std::vector<int> finish_mark_at;  // mark index -> required hole or -1
  bool table_usable = true;
  bool frozen_marks = false;        // marks may not move at all
};

// Builds the shared setup: symmetry subgroup, valid counts and their
// targets, region data. Error("bad-regions") when Merson pruning is asked
// for with invalid regions.
Setup make_setup(const Problem& p, const SolveOptions& opts);

// Root-level refutations that need no search: "class-mismatch" or
// "resource-deficit:<name>", else "".
std::string static_refutation(const Setup& s);

// Bidirectional layered search. Requires <= 64 holes and no marks or move
// constraints. Returns a move-minimal solution when one exists.
struct LayeredResult {
  Outcome outcome = Outcome::exhausted;
  std::string reason;
  std::vector<Move> moves;
};
bool layered_eligible(const Problem& p);
LayeredResult solve_layered(const Setup& s, Limits& limits);

}  // namespace pegsol::detail
