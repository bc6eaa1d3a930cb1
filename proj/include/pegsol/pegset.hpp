#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace pegsol {

inline constexpr int kMaxHoles = 128;

// Fixed-width bitset over a board's hole indices. Bit i set = hole i pegged.
class PegSet {
 public:
  constexpr PegSet() = default;

  static constexpr PegSet single(int hole) {
    PegSet s;
    s.set(hole);
    return s;
  }

  constexpr bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  constexpr void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  constexpr void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  constexpr void flip(int i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  constexpr int count() const { return std::popcount(w_[0]) + std::popcount(w_[1]); }
  constexpr bool empty() const { return (w_[0] | w_[1]) == 0; }

  constexpr bool contains_all(const PegSet& o) const {
    return (w_[0] & o.w_[0]) == o.w_[0] && (w_[1] & o.w_[1]) == o.w_[1];
  }
  constexpr bool intersects(const PegSet& o) const {
    return ((w_[0] & o.w_[0]) | (w_[1] & o.w_[1])) != 0;
  }

  constexpr PegSet& operator|=(const PegSet& o) {
    w_[0] |= o.w_[0];
    w_[1] |= o.w_[1];
    return *this;
  }
  constexpr PegSet& operator&=(const PegSet& o) {
    w_[0] &= o.w_[0];
    w_[1] &= o.w_[1];
    return *this;
  }
  constexpr PegSet& operator^=(const PegSet& o) {
    w_[0] ^= o.w_[0];
    w_[1] ^= o.w_[1];
    return *this;
  }
  friend constexpr PegSet operator|(PegSet a, const PegSet& b) { return a |= b; }
  friend constexpr PegSet operator&(PegSet a, const PegSet& b) { return a &= b; }
  friend constexpr PegSet operator^(PegSet a, const PegSet& b) { return a ^= b; }

  // Ordering treats the set as a 128-bit unsigned integer with hole 0 least
  // significant; canonical forms are minima under this order.
  friend constexpr std::strong_ordering operator<=>(const PegSet& a, const PegSet& b) {
    if (auto c = a.w_[1] <=> b.w_[1]; c != 0) return c;
    return a.w_[0] <=> b.w_[0];
  }
  friend constexpr bool operator==(const PegSet&, const PegSet&) = default;

  constexpr std::uint64_t word(int i) const { return w_[i]; }
  constexpr void set_word(int i, std::uint64_t v) { w_[i] = v; }

  template <class F>
  constexpr void for_each(F&& f) const {
    for (int k = 0; k < 2; ++k) {
      for (std::uint64_t x = w_[k]; x != 0; x &= x - 1) f(k * 64 + std::countr_zero(x));
    }
  }

  std::size_t hash() const {
    std::uint64_t h = w_[0] * 0x9E3779B97F4A7C15ull ^ (w_[1] + 0x632BE59BD9B4E019ull);
    h ^= h >> 29;
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 32;
    return static_cast<std::size_t>(h);
  }

 private:
  std::array<std::uint64_t, 2> w_{};
};

}  // namespace pegsol

template <>
struct std::hash<pegsol::PegSet> {
  std::size_t operator()(const pegsol::PegSet& s) const noexcept { return s.hash(); }
};
