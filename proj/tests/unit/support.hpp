#pragma once

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "nhskin/matching.hpp"
#include "nhskin/oracle.hpp"

namespace nhskin::testing {

/// Seeded draws; every value is taken in its own statement so the stream order is fixed.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  double phase() { return uniform(0.0, 2.0 * std::numbers::pi); }
  cplx hopping() {
    const double m = uniform(0.5, 2.0);
    const double a = phase();
    return std::polar(m, a);
  }
  cplx onsite() {
    const double re = uniform(-1.0, 1.0);
    const double im = uniform(-1.0, 1.0);
    return {re, im};
  }

 private:
  std::mt19937_64 rng_;
};

/// Largest distance in the optimal one-to-one pairing, relative to the larger spectral radius.
inline double relative_mismatch(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double scale = 1.0;
  for (const auto& z : a) scale = std::max(scale, std::abs(z));
  for (const auto& z : b) scale = std::max(scale, std::abs(z));
  return match_spectra(a, b).max_distance / scale;
}

inline std::vector<cplx> oracle_values(const Matrix& m) { return dense_spectrum(m).spectrum.values; }

}  // namespace nhskin::testing
