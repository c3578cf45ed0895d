#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Randomness utilities. Everything here is bit-reproducible across platforms:
// mt19937_64's output sequence is fixed by the standard, uniform doubles are
// built from the top 53 bits, and seed derivation uses the SplitMix64
// finalizer. std::uniform_real_distribution / std::normal_distribution are
// deliberately avoided because their output is implementation-defined.

namespace relloc::rng {

// Derives an independent seed for a named sub-stream. Used for per-trial
// streams (stream = trial index) and within a trial for the ground-truth and
// noise draws, so extending a run never perturbs earlier streams.
constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine(mix(seed, 0x5eed)); }

// Uniform in [0, 1) with 53-bit resolution.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Standard normal deviates via the Marsaglia polar method. Generates pairs;
// the spare is handed out on the next call, so a sampler's output depends
// only on its seed and the number of values drawn.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : eng_(make_engine(seed)) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01(eng_) - 1.0;
      v = 2.0 * uniform01(eng_) - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  Engine eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace relloc::rng
