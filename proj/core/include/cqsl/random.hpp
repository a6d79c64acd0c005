#pragma once

#include <cstdint>

namespace cqsl {

/// SplitMix64 generator. Small, fast and identical on every platform, which
/// keeps seeded experiments bit-reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;
  /// Uniform in (0, 1); never returns 0 so it is safe under log().
  double uniform() noexcept;
  /// Standard normal via Box-Muller; the second variate is cached.
  double normal() noexcept;

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Independent stream seed derived from a base seed and a stream index.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace cqsl
