#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace bellmono {

inline constexpr double kPi = 3.14159265358979323846;

// Finalizer from the splitmix64 generator; used to turn (seed, salt) pairs
// into statistically independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Stream seed for work item `salt` under master seed `seed`. Every scan
// item, optimizer restart, and sampled state derives its stream through
// this one function so results are schedule-independent.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

// Deterministic random source: mt19937_64 plus a Box-Muller normal.
// std::normal_distribution is implementation-defined, so the Gaussian is
// generated here explicitly to keep runs reproducible bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform double in [0, range).
  double uniform(double range) { return range * uniform(); }

  double normal();

  // Real and imaginary parts i.i.d. N(0, 1).
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// dim i.i.d. standard complex normals, normalized to the unit sphere
// (Marsaglia construction: the direction is uniform).
std::vector<std::complex<double>> gaussian_unit_vector(std::size_t dim, Rng& rng);

}  // namespace bellmono
