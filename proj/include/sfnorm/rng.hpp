#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace sfnorm {

/// splitmix64 finalizer. Stateless, so it doubles as a counter-based generator:
/// hash_counter(key, c) for c = 0, 1, ... is a reproducible stream.
std::uint64_t mix64(std::uint64_t x) noexcept;
std::uint64_t hash_counter(std::uint64_t key, std::uint64_t counter) noexcept;

/// Seeded random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard; every distribution below is implemented here rather than taken
/// from <random> so draws are identical across standard libraries.
/// `substream(i)` derives an independent stream from (seed, i) only, so the
/// stream for trial t does not depend on how many draws other trials made.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  RngStream substream(std::uint64_t index) const { return RngStream(hash_counter(seed_, index)); }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n-1}; n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Standard normal via Box-Muller.
  double normal();
  /// +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) ? -1.0 : 1.0; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// k distinct indices drawn uniformly from {0, ..., n-1} (Floyd's algorithm),
/// returned in increasing order. Requires k <= n.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, RngStream& rng);

}  // namespace sfnorm
