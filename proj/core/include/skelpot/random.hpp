#pragma once

#include <cstdint>
#include <vector>

#include "skelpot/rational.hpp"

namespace skelpot {

// xorshift64* generator. Ranges are drawn by rejection, so every value in
// [lo, hi] is equally likely and the stream is identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
  }

  // Uniform on [lo, hi], inclusive.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool chance(std::uint64_t num, std::uint64_t den) { return uniform(0, static_cast<std::int64_t>(den) - 1) < static_cast<std::int64_t>(num); }
  // Uniform on [0, 1) with 53 random bits.
  double unit();
  // Random p/q with 1 <= q <= max_den and lo <= p/q <= hi.
  Rational rational(const Rational& lo, const Rational& hi, std::int64_t max_den);

  template <class T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(items.size()) - 1))];
  }

 private:
  std::uint64_t state_;
};

}  // namespace skelpot
