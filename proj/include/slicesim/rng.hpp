#ifndef SLICESIM_RNG_HPP_
#define SLICESIM_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <string_view>

namespace slicesim {

// Deterministic, hierarchically splittable RNG. One logical stream per run,
// split per module (channel, traffic, mobility, broker) so adding draws in
// one module never perturbs another. All distributions are hand-rolled so
// results do not depend on the standard library implementation.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {
    // warm up so nearby seeds decorrelate
    next_u64();
    next_u64();
  }

  // Derive an independent substream labelled by name (FNV-1a of the label
  // mixed into the current seed, not the evolving state).
  RngStream split(std::string_view label) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : label) {
      h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
      h *= 1099511628211ULL;
    }
    return RngStream(seed_mix(origin_ ^ h));
  }

  RngStream split(std::uint64_t index) const {
    return RngStream(seed_mix(origin_ ^ (0x9e3779b97f4a7c15ULL * (index + 1))));
  }

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  double exponential(double mean) {
    double u = uniform();
    return -mean * std::log1p(-u);
  }

  double normal(double mean = 0.0, double stddev = 1.0) {
    // Box-Muller, one sample per call (no cached pair, keeps splits simple)
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(6.283185307179586 * u2);
  }

  // Knuth for small lambda, normal approximation above 64 (rates here are small).
  std::uint64_t poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    if (lambda > 64.0) {
      double x = normal(lambda, std::sqrt(lambda));
      return x < 0.5 ? 0 : static_cast<std::uint64_t>(std::llround(x));
    }
    double limit = std::exp(-lambda);
    double p = 1.0;
    std::uint64_t k = 0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

 private:
  static std::uint64_t seed_mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
  }

  std::uint64_t state_;
  std::uint64_t origin_ = state_;
};

}  // namespace slicesim

#endif
