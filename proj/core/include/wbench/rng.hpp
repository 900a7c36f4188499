#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace wbench {

/// Seedable, splittable random stream (xoshiro256** keyed by SplitMix64).
///
/// Every stochastic operation in the library takes a stream explicitly. A
/// stream can be split into child streams identified by a tag; children of
/// the same parent with different tags are statistically independent, and
/// splitting never advances the parent. This is what makes whole jobs
/// bit-reproducible regardless of execution order.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed);

  RngStream split(std::uint64_t tag) const;
  RngStream split(std::string_view tag) const;

  std::uint64_t next_u64();
  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return p > 0.0 && uniform() < p; }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::array<std::uint64_t, 4> s_;
};

}  // namespace wbench
