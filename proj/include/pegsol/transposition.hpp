#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>

namespace pegsol {

// Search-state key: a 128-bit peg set plus up to 48 bits of auxiliary state
// (chain cell, marks, flags).
struct TableKey {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t aux = 0;  // < 2^48
};

// Bounded table of "no solution within `budget` more moves from here" facts.
// Buckets of four entries; a store replaces the entry with the smallest
// budget. Entries are seqlocked so concurrent readers never see a torn entry
// (a racing read is a miss, a racing write is dropped); retention is never
// needed for correctness.
class TranspositionTable {
 public:
  static constexpr int kUnbounded = 0xFFFE;  // dead at any budget

  explicit TranspositionTable(std::size_t entries);

  // Largest budget recorded as failing for `key`, or -1.
  int probe(const TableKey& key) const;
  void store(const TableKey& key, int failed_budget);

  std::size_t capacity() const { return mask_ + 1; }
  void clear();

 private:
  struct Entry {
    std::atomic<std::uint64_t> seq{0};
    std::atomic<std::uint64_t> lo{0};
    std::atomic<std::uint64_t> hi{0};
    std::atomic<std::uint64_t> aux_value{0};  // aux << 16 | (budget + 1), 0 = empty
  };

  std::size_t bucket(const TableKey& key) const;

  std::unique_ptr<Entry[]> entries_;
  std::size_t mask_;
};

}  // namespace pegsol
