#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "stackgrad/linalg.hpp"

namespace stackgrad {

// Counter-based pseudo-random streams built on the splitmix64 finalizer.
// Every draw is a pure function of (key, counter), so each (run, stage)
// pair maps to its own stream and replays are bit-identical regardless of
// how seeds are scheduled across threads.

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Derive a child stream key from a parent key and a tag.
inline std::uint64_t derive_key(std::uint64_t parent, std::uint64_t tag) {
  return detail::splitmix64(parent ^ detail::splitmix64(tag));
}

inline std::uint64_t derive_key(std::uint64_t parent, std::string_view tag) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (const char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return derive_key(parent, h);
}

/// Stateless random-access stream: draw i of stream `key`.
inline std::uint64_t stream_u64(std::uint64_t key, std::uint64_t index) {
  return detail::splitmix64(key + index * 0x9E3779B97F4A7C15ULL);
}

/// Uniform double in (0, 1].
inline double stream_unit(std::uint64_t key, std::uint64_t index) {
  return (static_cast<double>(stream_u64(key, index) >> 11) + 1.0) *
         0x1.0p-53;
}

/// Standard normal via Box-Muller on two stream draws.
inline double stream_gaussian(std::uint64_t key, std::uint64_t index) {
  const double u1 = stream_unit(key, 2 * index);
  const double u2 = stream_unit(key, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * M_PI * u2);
}

/// Sequential view over a stream; convenient where draw order is natural.
class StreamRng {
 public:
  explicit StreamRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return stream_u64(key_, counter_++); }
  double next_unit() { return stream_unit(key_, counter_++); }
  double next_gaussian() {
    const double g = stream_gaussian(key_, gaussian_counter_++);
    return g;
  }
  /// Exactly uniform over {-1, +1} (top bit of the draw).
  double next_sign() {
    return (next_u64() >> 63) != 0U ? 1.0 : -1.0;
  }
  double next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }
  Vector next_uniform_vector(const Box& box) {
    Vector v(box.dim());
    for (int i = 0; i < box.dim(); ++i)
      v(i) = next_uniform(box.lo(i), box.hi(i));
    return v;
  }
  Vector next_gaussian_vector(int dim, double sigma) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = sigma * next_gaussian();
    return v;
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::uint64_t gaussian_counter_ = 0;
};

}  // namespace stackgrad
