#pragma once

#include <cstdint>
#include <limits>

namespace scg {

/// splitmix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Folds words into a key; distinct word sequences give unrelated outputs.
constexpr std::uint64_t hash_words(std::uint64_t key, std::uint64_t a) noexcept {
  return mix64(mix64(key) ^ (a * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL));
}

constexpr std::uint64_t hash_words(std::uint64_t key, std::uint64_t a, std::uint64_t b) noexcept {
  return hash_words(hash_words(key, a), b);
}

/// Maps 64 random bits to a double in [0, 1) with 53 bits of resolution.
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Tags for the independent substreams a trial splits into.
enum class StreamTag : std::uint64_t {
  legit = 0x6c656769,
  eavesdroppers = 0x65617665,
  roles = 0x726f6c65,
  eds_per_slot = 0x70736c6f,
  fixture = 0x66697874,
};

/// Counter-based random stream.
///
/// The stream is a key plus a counter; the n-th draw is a pure function of
/// (key, n). Substreams derive child keys, so trial i of a run with seed s is
/// `RandomStream(s).substream(i)` regardless of how trials are scheduled.
/// Keyed draws (`uniform_at`) never touch the counter and give the same value
/// for the same coordinates, which is how per-slot ALOHA roles stay lazy.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key = 0) noexcept : key_(key) {}

  static RandomStream for_trial(std::uint64_t seed, std::uint64_t trial) noexcept {
    return RandomStream(seed).substream(trial);
  }

  RandomStream substream(std::uint64_t tag) const noexcept {
    return RandomStream(hash_words(key_, 0x73756273ULL, tag));
  }
  RandomStream substream(StreamTag tag) const noexcept {
    return substream(static_cast<std::uint64_t>(tag));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix64(key_ ^ mix64(counter_++)); }

  double uniform() noexcept { return to_unit((*this)()); }
  double uniform(double a, double b) noexcept { return a + (b - a) * uniform(); }
  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Poisson variate; exact for any mean via additivity of Poisson chunks.
  std::uint64_t poisson(double mean);

  /// Uniform in [0, 1) determined by (key, a, b) only.
  double uniform_at(std::uint64_t a, std::uint64_t b) const noexcept {
    return to_unit(hash_words(key_, a, b));
  }

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace scg
