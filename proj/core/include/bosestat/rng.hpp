#pragma once

// Deterministic random number streams. Every replica of an experiment draws
// from its own stream derived from (master seed, particle number, replica
// index) by counter-based splitting, so results do not depend on scheduling
// or thread count.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace bosestat::rng {

// One splitmix64 step; also the stream derivation mixer.
std::uint64_t splitmix64(std::uint64_t& state);

// xoshiro256** with explicit, platform-independent seeding.
class Stream {
 public:
  explicit Stream(std::uint64_t seed);

  // Stream for replica r of a run at particle number n. Distinct (seed, n, r)
  // triples give statistically independent streams.
  static Stream replica(std::uint64_t master_seed, std::uint64_t n,
                        std::uint64_t r);

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Standard normal, Marsaglia polar method (second value cached).
  double gaussian();

  // Exact Binomial(n, p) by inverse transform enumerated outward from the
  // mode; expected cost O(sqrt(n p (1-p))).
  std::uint64_t binomial(std::uint64_t n, double p);

  // Multinomial counts by conditional binomials. probs must be nonnegative
  // and sum to 1 within 1e-9.
  std::vector<std::uint64_t> multinomial(std::uint64_t n,
                                         std::span<const double> probs);

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = std::size_t(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::array<std::uint64_t, 4> s_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace bosestat::rng
