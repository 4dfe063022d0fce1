#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include <Eigen/Core>

namespace irgn {

namespace detail {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace detail

// Counter-based random stream: output word i is a pure function of
// (key, i), so any draw is replayable from the serialized (key, counter)
// pair alone. Streams split into statistically independent children keyed
// by an integer id or a label; replicate runs and per-iteration sketches
// derive their streams that way.
class RngStream {
public:
  RngStream() = default;
  explicit RngStream(std::uint64_t seed)
      : key_(detail::mix64(seed ^ detail::kGolden)) {}
  RngStream(std::uint64_t key, std::uint64_t counter, struct restore_tag)
      : key_(key), counter_(counter) {}
  struct restore_tag {};

  RngStream child(std::uint64_t id) const {
    RngStream c;
    c.key_ = detail::mix64(key_ ^ detail::mix64(id * detail::kGolden + 0x243F6A8885A308D3ull));
    return c;
  }
  RngStream child(std::string_view label) const { return child(detail::fnv1a(label)); }

  std::uint64_t next_u64() {
    return detail::mix64(key_ + (++counter_) * detail::kGolden);
  }

  // Uniform in (0, 1]; never 0, so logs are safe.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; consumes exactly two words per draw.
  double next_normal() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Eigen::VectorXd normal_vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = next_normal();
    return v;
  }

  // Uniform integer in [0, n), n >= 1. Lemire reduction, bias < 2^-64.
  int next_below(int n) {
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(next_u64()) * static_cast<std::uint64_t>(n);
    return static_cast<int>(prod >> 64);
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace irgn
