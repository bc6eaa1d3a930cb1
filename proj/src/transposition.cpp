#include "pegsol/transposition.hpp"

#include <algorithm>
#include <bit>

namespace pegsol {

namespace {

constexpr std::size_t kWays = 4;

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDull;
  x ^= x >> 33;
  x *= 0xC4CEB9FE1A85EC53ull;
  x ^= x >> 33;
  return x;
}

}  // namespace

TranspositionTable::TranspositionTable(std::size_t entries) {
  const std::size_t n = std::bit_ceil(std::max<std::size_t>(entries, kWays));
  entries_ = std::make_unique<Entry[]>(n);
  mask_ = n - 1;
}

void TranspositionTable::clear() {
  for (std::size_t i = 0; i <= mask_; ++i) {
    entries_[i].aux_value.store(0, std::memory_order_relaxed);
    entries_[i].lo.store(0, std::memory_order_relaxed);
    entries_[i].hi.store(0, std::memory_order_relaxed);
  }
}

std::size_t TranspositionTable::bucket(const TableKey& key) const {
  const std::uint64_t h = mix(key.lo ^ mix(key.hi ^ mix(key.aux + 0x9E3779B97F4A7C15ull)));
  return static_cast<std::size_t>(h) & mask_ & ~(kWays - 1);
}

int TranspositionTable::probe(const TableKey& key) const {
  const std::size_t base = bucket(key);
  for (std::size_t w = 0; w < kWays; ++w) {
    const Entry& e = entries_[base + w];
    const std::uint64_t s1 = e.seq.load(std::memory_order_acquire);
    if (s1 & 1) continue;
    const std::uint64_t lo = e.lo.load(std::memory_order_relaxed);
    const std::uint64_t hi = e.hi.load(std::memory_order_relaxed);
    const std::uint64_t av = e.aux_value.load(std::memory_order_relaxed);
    std::atomic_thread_fence(std::memory_order_acquire);
    if (e.seq.load(std::memory_order_relaxed) != s1) continue;
    if ((av & 0xFFFF) != 0 && lo == key.lo && hi == key.hi && (av >> 16) == key.aux) {
      return static_cast<int>(av & 0xFFFF) - 1;
    }
  }
  return -1;
}

void TranspositionTable::store(const TableKey& key, int failed_budget) {
  const std::size_t base = bucket(key);
  const std::uint64_t value = static_cast<std::uint64_t>(std::min(failed_budget, kUnbounded)) + 1;
  std::size_t victim = base;
  std::uint64_t victim_value = ~0ull;
  for (std::size_t w = 0; w < kWays; ++w) {
    const Entry& e = entries_[base + w];
    const std::uint64_t av = e.aux_value.load(std::memory_order_relaxed);
    const std::uint64_t v = av & 0xFFFF;
    if (v != 0 && e.lo.load(std::memory_order_relaxed) == key.lo &&
        e.hi.load(std::memory_order_relaxed) == key.hi && (av >> 16) == key.aux) {
      if (v >= value) return;
      victim = base + w;
      break;
    }
    if (v < victim_value) {
      victim = base + w;
      victim_value = v;
    }
  }
  Entry& e = entries_[victim];
  std::uint64_t s = e.seq.load(std::memory_order_relaxed);
  if ((s & 1) || !e.seq.compare_exchange_strong(s, s + 1, std::memory_order_acquire)) return;
  e.lo.store(key.lo, std::memory_order_relaxed);
  e.hi.store(key.hi, std::memory_order_relaxed);
  e.aux_value.store(key.aux << 16 | value, std::memory_order_relaxed);
  e.seq.store(s + 2, std::memory_order_release);
}

}  // namespace pegsol
