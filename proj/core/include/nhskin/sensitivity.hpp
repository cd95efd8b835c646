#pragma once

#include <functional>

#include "nhskin/types.hpp"

namespace nhskin {

using SpectrumAt = std::function<Spectrum(cplx delta)>;
using SpectrumFamily = std::function<Spectrum(int n, cplx delta)>;

/// One spectrum per grid point, in grid order.
std::vector<Spectrum> delta_sweep(const SpectrumAt& model, const std::vector<cplx>& grid,
                                  int threads = 1);

/// Uniform real grid from `from` to `to` inclusive.
std::vector<cplx> delta_grid(double from, double to, double step);

/// Symmetric Hausdorff distance between two point sets in the complex plane.
double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b);
double hausdorff(const Spectrum& a, const Spectrum& b);

/// Drops the k values of smallest modulus.
std::vector<cplx> without_smallest(std::vector<cplx> values, int k);

struct CriticalDelta {
  int n = 0;
  double delta = 1.0;
  bool reached = false;  // false: even delta = 1 moves the spectrum by less than the target
};

struct ExponentOptions {
  double target = 0.5;
  std::vector<int> sizes;
  int exclude_smallest = 0;
  int max_iterations = 60;
  double relative_tolerance = 1e-12;
};

struct ExponentResult {
  std::vector<CriticalDelta> points;
  double xi = 0.0;  // minus the slope of ln delta* against N
  double r2 = 0.0;
  int fitted = 0;
  bool exponential = false;
};

/// Verdict thresholds: xi above kMinExponent, fit quality at least kMinR2, three fitted sizes.
inline constexpr double kMinExponent = 0.02;
inline constexpr double kMinR2 = 0.95;

CriticalDelta critical_delta(const SpectrumFamily& family, int n, double target,
                             int exclude_smallest = 0, int max_iterations = 60,
                             double relative_tolerance = 1e-12);

ExponentResult sensitivity_exponent(const SpectrumFamily& family, const ExponentOptions& opt);

struct SensitivityScreen {
  double first_step = 0.0;   // d(S(0), S(eps))
  double second_step = 0.0;  // d(S(eps), S(2 eps))
  double ratio = 0.0;
  bool exponential = false;
};

inline constexpr double kDefaultScreenRatio = 1.2;

SensitivityScreen classify_sensitivity(const SpectrumAt& model, double eps = 0.01,
                                       double threshold = kDefaultScreenRatio);

}  // namespace nhskin
