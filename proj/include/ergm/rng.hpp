#ifndef ERGM_RNG_HPP
#define ERGM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace ergm {

/// Counter-based, splittable 64-bit generator.
///
/// Output k of a stream with key K is a bijective mix of (K, k), so a stream
/// can be replayed from any position and child streams derived with split()
/// never share state with the parent. Satisfies UniformRandomBitGenerator.
/// The distributions below are hand-rolled so that sequences are identical
/// across standard library implementations.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed = 0, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + 0x6a09e667f3bcc909ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + kGamma * (++counter_)); }

  /// Independent child stream; the parent is not advanced.
  [[nodiscard]] CounterRng split(std::uint64_t stream_id) const {
    CounterRng child;
    child.key_ = mix(key_ ^ mix(stream_id * kGamma + 0xbb67ae8584caa73bULL));
    return child;
  }

  [[nodiscard]] std::uint64_t counter() const { return counter_; }
  void seek(std::uint64_t position) { counter_ = position; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) {
    __extension__ using u128 = unsigned __int128;
    if (bound == 0) return 0;
    u128 prod = static_cast<u128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(prod);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        prod = static_cast<u128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(prod);
      }
    }
    return static_cast<std::uint64_t>(prod >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller (one draw discarded to stay stateless).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  // Stafford variant 13 finalizer (as in SplitMix64).
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace ergm

#endif
