#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace gvoys {

// Counter-style keyed randomness. Every draw is a pure function of its key,
// so results do not depend on evaluation order or thread scheduling.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t key_hash(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (auto k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}

/// Uniform on [0, 1) with 53 random bits.
constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by multiply-shift.
inline std::uint64_t to_index(std::uint64_t bits, std::uint64_t bound) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits) * bound) >> 64);
}

constexpr double to_sign(std::uint64_t bits) { return (bits >> 63) ? -1.0 : 1.0; }

/// Sequential stream over a keyed hash; a tiny stand-in for std engines where
/// a portable, seed-stable sequence is needed.
class KeyedStream {
 public:
  explicit constexpr KeyedStream(std::uint64_t key) : key_(key) {}
  std::uint64_t next() { return key_hash({key_, counter_++}); }
  double uniform() { return to_unit(next()); }
  std::uint64_t index(std::uint64_t bound) { return to_index(next(), bound); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace gvoys
