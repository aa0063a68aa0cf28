#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tanglesim {

/// Seeded generator with portable draws. The distributions in <random> are
/// implementation-defined, so uniform/exponential sampling is done here to keep
/// replays bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Exponential with the given rate (events per unit time). rate must be > 0.
  double exponential(double rate);

  /// `count` distinct indices drawn uniformly from [0, population), Floyd's method.
  std::vector<std::size_t> sample_indices(std::size_t population, std::size_t count);

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent substream seed from a root seed, a stream name and an
/// index (e.g. a node id). Pure function.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream, std::uint64_t index = 0);

}  // namespace tanglesim
