#pragma once

#include <functional>

#include "nhskin/types.hpp"

namespace nhskin {

/// k -> H(k) with period 2 pi; dim is the block size.
struct BlochSampler {
  std::function<Matrix(double)> h;
  int dim = 1;

  static BlochSampler scalar(std::function<cplx(double)> f);
  cplx det_shifted(double k, cplx base) const;
  /// Eigenvalues of H(k) on a uniform grid of n points in [-pi, pi).
  std::vector<cplx> curve(int n) const;
};

struct WindingResult {
  cplx base{0.0};
  int w = 0;
  int samples = 0;
  double min_abs_det = 0.0;
  double raw = 0.0;  // unrounded phase sum / 2 pi
};

/// Counterclockwise-positive winding of det(H(k) - base) as k runs from -pi to pi.
WindingResult winding_number(const BlochSampler& b, cplx base, int n_samples = 64);

struct GapGrid {
  int nx = 24;
  int ny = 24;
  double padding = 0.2;
};

struct GapVerdict {
  bool point_gap = false;  // false means consistent with a line gap on this grid
  cplx witness{0.0};
  int witness_w = 0;
  int probes = 0;
};

GapVerdict gap_classify(const BlochSampler& b, const GapGrid& grid = {});

/// det of the N2 x N2 Bloch block of the triangular strip by three-term recursion.
cplx tridiag_bloch_det(cplx t_l, cplx t_r, double k, int n2);

struct DetWinding {
  WindingResult winding;
  bool phase_condition = false;  // |t_r / t_l| = 1
  bool degenerate = false;       // curve encloses no area
};

DetWinding tridiag_det_winding(cplx t_l, cplx t_r, int n2, int n_samples = 256);

}  // namespace nhskin
