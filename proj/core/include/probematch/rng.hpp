#pragma once

// Counter-based random numbers.
//
// Every random decision in the library is drawn from a SplitMix64 stream in
// counter mode: the n-th output of the stream with key k is mix64(k + n * G),
// where G is the 64-bit golden-ratio increment and mix64 is the SplitMix64
// finalizer. A stream key is derived from (experiment seed, trial index,
// substream tag), so trial t always sees the same numbers no matter which
// worker runs it or in which order trials execute.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace probematch {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Folds a sequence of words into one stream key.
constexpr std::uint64_t derive_key(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t k = 0x6A09E667F3BCC909ULL;
  for (std::uint64_t w : words) k = mix64(k ^ mix64(w + kGoldenGamma));
  return k;
}

/// Substream tags. Each consumer of randomness inside a trial owns one.
enum class Stream : std::uint64_t {
  kInstantiation = 1,
  kEdgeStates = 2,
  kArrivals = 3,
  kStrings = 4,
  kAcceptance = 5,
  kGenerator = 6,
  kRounding = 7,
};

/// Converts 64 random bits to a double uniform on [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}
  CounterRng(std::uint64_t seed, std::uint64_t trial, Stream stream) noexcept
      : key_(derive_key({seed, trial, static_cast<std::uint64_t>(stream)})) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  /// Stateless access to the n-th output of stream `key`.
  static constexpr std::uint64_t at(std::uint64_t key, std::uint64_t n) noexcept {
    return mix64(key + (n + 1) * kGoldenGamma);
  }

  result_type operator()() noexcept { return at(key_, counter_++); }

  double uniform() noexcept { return to_unit((*this)()); }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Uniform integer in [0, n) by rejection (unbiased); n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x = (*this)();
    while (x >= limit) x = (*this)();
    return x % n;
  }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace probematch
