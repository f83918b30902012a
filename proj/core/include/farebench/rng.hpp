#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace farebench::rng {

// All randomness in the project flows through the generators below rather
// than <random> distributions, whose output sequences are
// implementation-defined. Fixed algorithms keep runs reproducible across
// compilers and standard libraries.

inline constexpr std::uint64_t kSplitMixGamma = 0x9e3779b97f4a7c15ull;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += kSplitMixGamma;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Stateless avalanche mix of two words.
inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = a ^ (b + kSplitMixGamma + (a << 6) + (a >> 2));
  return splitmix64(state);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix(mix(a, b), c);
}

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Seed for a named component derived from the global seed; adding a
// component never shifts another component's stream.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view component) {
  return mix(global_seed, fnv1a(component));
}

class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform in the open interval (0, 1); never 0, so safe under log().
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (cosine branch).
  double next_normal() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Uniform integer in [0, n). Rejection-free modulo bias is negligible for
  // the index ranges used here, but reject anyway to keep draws exact.
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::uint64_t state_;
};

template <typename T>
void shuffle(std::vector<T>& items, SplitMix& gen) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(gen.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

// Sample `count` distinct elements of `pool` uniformly without replacement,
// returned in ascending pool order. Partial Fisher-Yates on a scratch copy.
template <typename T>
std::vector<T> sample_without_replacement(std::span<const T> pool, std::size_t count, SplitMix& gen) {
  std::vector<T> scratch(pool.begin(), pool.end());
  if (count >= scratch.size()) return scratch;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(gen.next_below(scratch.size() - i));
    std::swap(scratch[i], scratch[j]);
  }
  scratch.resize(count);
  std::sort(scratch.begin(), scratch.end());
  return scratch;
}

// Deterministic per-(seed, stream, index) draws, independent of evaluation
// order; chunked and whole-table consumers see identical values.
inline double keyed_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  SplitMix gen(mix(seed, stream, index));
  return gen.next_normal();
}

inline double keyed_unit(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  SplitMix gen(mix(seed, stream, index));
  return gen.next_unit();
}

}  // namespace farebench::rng
