#include "bosestat/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bosestat::rng {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Stream::Stream(std::uint64_t seed) {
  std::uint64_t st = seed;
  for (auto& w : s_) w = splitmix64(st);
  // xoshiro must not start from the all-zero state
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

Stream Stream::replica(std::uint64_t master_seed, std::uint64_t n,
                       std::uint64_t r) {
  std::uint64_t st = master_seed;
  std::uint64_t a = splitmix64(st);
  st ^= n * 0xD1342543DE82EF95ull;
  std::uint64_t b = splitmix64(st);
  st ^= r * 0xDABA0B6EB09322DBull;
  std::uint64_t c = splitmix64(st);
  return Stream(a ^ rotl(b, 17) ^ rotl(c, 41));
}

std::uint64_t Stream::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Stream::uniform() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Stream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound is zero");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double Stream::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double m = std::sqrt(-2.0 * std::log(s) / s);
  cached_gaussian_ = v * m;
  has_cached_gaussian_ = true;
  return u * m;
}

std::uint64_t Stream::binomial(std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binomial: p outside [0,1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;

  const double q = 1.0 - p;
  const auto nn = double(n);
  const auto mode = std::uint64_t(std::min(nn, std::floor((nn + 1.0) * p)));
  double log_pmf_mode = std::lgamma(nn + 1.0) - std::lgamma(double(mode) + 1.0) -
                        std::lgamma(nn - double(mode) + 1.0) +
                        double(mode) * std::log(p) +
                        (nn - double(mode)) * std::log1p(-p);
  const double pmf_mode = std::exp(log_pmf_mode);

  const double u = uniform();
  // enumerate k = mode, mode+1, mode-1, mode+2, ... accumulating pmf
  double acc = pmf_mode;
  if (u < acc) return mode;
  double up_pmf = pmf_mode, down_pmf = pmf_mode;
  std::uint64_t up = mode, down = mode;
  std::uint64_t last = mode;
  while (up < n || down > 0) {
    if (up < n) {
      up_pmf *= (nn - double(up)) / (double(up) + 1.0) * (p / q);
      ++up;
      acc += up_pmf;
      last = up;
      if (u < acc) return up;
    }
    if (down > 0) {
      down_pmf *= double(down) / (nn - double(down) + 1.0) * (q / p);
      --down;
      acc += down_pmf;
      last = down;
      if (u < acc) return down;
    }
  }
  // u fell into the rounding slack beyond the accumulated total
  return last;
}

std::vector<std::uint64_t> Stream::multinomial(std::uint64_t n,
                                               std::span<const double> probs) {
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("multinomial: negative weight");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw std::invalid_argument("multinomial: weights do not sum to 1");

  std::vector<std::uint64_t> counts(probs.size(), 0);
  double remaining_mass = total;
  std::uint64_t remaining = n;
  for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
    if (remaining == 0) break;
    double cond = remaining_mass > 0.0 ? probs[i] / remaining_mass : 0.0;
    cond = std::min(1.0, std::max(0.0, cond));
    std::uint64_t c = binomial(remaining, cond);
    counts[i] = c;
    remaining -= c;
    remaining_mass -= probs[i];
  }
  if (!probs.empty()) counts.back() = remaining;
  return counts;
}

}  // namespace bosestat::rng
