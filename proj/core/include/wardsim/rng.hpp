#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace wardsim {

// Deterministic random stream. Distribution transforms are implemented here
// rather than with std::*_distribution so that draws are identical across
// standard library implementations; regression baselines depend on this.
class Rng {
 public:
  Rng() : engine_(0x9e3779b97f4a7c15ULL) {}
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{seed, stream, 0x5851f42d4c957f2dULL};
    engine_.seed(seq);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t bits() { return engine_(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  // Box-Muller; one spare is cached per stream.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Knuth's product method; fine for the small means used here.
  int poisson(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  // Categorical draw over nonnegative weights (need not be normalized).
  template <typename Container>
  int categorical(const Container& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double x = uniform() * total;
    int i = 0;
    const int n = static_cast<int>(weights.size());
    for (; i < n - 1; ++i) {
      x -= weights[i];
      if (x < 0.0) break;
    }
    return i;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stream tags; every consumer of randomness gets its own substream so that
// arrival/LOS/delay realizations stay identical while policies vary.
enum class RngStream : std::uint64_t {
  ed_arrivals = 1,
  soc_arrivals = 2,
  batch_arrivals = 3,
  patient_attributes = 4,
  policy = 5,
};

inline Rng make_stream(std::uint64_t seed, RngStream stream) {
  return Rng(seed, static_cast<std::uint64_t>(stream));
}

}  // namespace wardsim
