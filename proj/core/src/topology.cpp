#include "nhskin/topology.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace nhskin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOnSpectrum = 1e-10;
constexpr int kMaxSamples = 1 << 18;

double grid_k(int i, int n) { return -kPi + 2.0 * kPi * i / n; }

struct PhaseSum {
  double raw = 0.0;
  double min_abs = 0.0;
  double max_step = 0.0;  // largest |phase increment|
};

PhaseSum phase_sum(const std::function<cplx(double)>& f, int n) {
  PhaseSum s;
  s.min_abs = std::numeric_limits<double>::infinity();
  cplx prev = f(grid_k(0, n));
  const cplx first = prev;
  s.min_abs = std::abs(prev);
  double total = 0.0;
  for (int i = 1; i <= n; ++i) {
    const cplx cur = i == n ? first : f(grid_k(i, n));
    s.min_abs = std::min(s.min_abs, std::abs(cur));
    const double step = std::arg(cur / prev);
    s.max_step = std::max(s.max_step, std::abs(step));
    total += step;
    prev = cur;
  }
  s.raw = total / (2.0 * kPi);
  return s;
}

WindingResult converge(const std::function<cplx(double)>& f, cplx base, int n_samples) {
  if (n_samples < 64) throw Error("winding_number: need at least 64 samples");
  WindingResult r;
  r.base = base;
  long previous = std::numeric_limits<long>::min();
  for (int n = n_samples; n <= kMaxSamples; n *= 2) {
    const PhaseSum s = phase_sum(f, n);
    // A half-turn between neighbouring samples puts the base on the chord joining them.
    if (s.min_abs < kOnSpectrum || s.max_step > kPi * (1.0 - 1e-9))
      throw Error("winding_number: base energy on spectrum");
    const long rounded = std::lround(s.raw);
    r.samples = n;
    r.min_abs_det = s.min_abs;
    r.raw = s.raw;
    r.w = static_cast<int>(rounded);
    if (std::abs(s.raw - static_cast<double>(rounded)) < 0.1 && rounded == previous &&
        s.max_step <= 0.5 * kPi)
      return r;
    previous = rounded;
  }
  throw Error("winding_number: phase sum did not converge");
}

}  // namespace

BlochSampler BlochSampler::scalar(std::function<cplx(double)> f) {
  BlochSampler b;
  b.dim = 1;
  b.h = [f = std::move(f)](double k) {
    Matrix m(1, 1);
    m(0, 0) = f(k);
    return m;
  };
  return b;
}

cplx BlochSampler::det_shifted(double k, cplx base) const {
  Matrix m = h(k);
  if (dim == 1) return m(0, 0) - base;
  m.diagonal().array() -= base;
  return m.partialPivLu().determinant();
}

std::vector<cplx> BlochSampler::curve(int n) const {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n) * dim);
  for (int i = 0; i < n; ++i) {
    const Matrix m = h(grid_k(i, n));
    if (dim == 1) {
      out.push_back(m(0, 0));
      continue;
    }
    Eigen::ComplexEigenSolver<Matrix> es(m, false);
    for (int j = 0; j < dim; ++j) out.push_back(es.eigenvalues()(j));
  }
  return out;
}

WindingResult winding_number(const BlochSampler& b, cplx base, int n_samples) {
  return converge([&](double k) { return b.det_shifted(k, base); }, base, n_samples);
}

GapVerdict gap_classify(const BlochSampler& b, const GapGrid& grid) {
  const std::vector<cplx> pts = b.curve(512);
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  cplx centroid{0.0};
  for (const cplx& z : pts) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
    centroid += z;
  }
  centroid /= static_cast<double>(pts.size());
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  const double px = grid.padding * std::max(x1 - x0, 1e-3 * span);
  const double py = grid.padding * std::max(y1 - y0, 1e-3 * span);
  x0 -= px;
  x1 += px;
  y0 -= py;
  y1 += py;

  std::vector<cplx> probes{centroid};
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j)
      probes.emplace_back(x0 + (x1 - x0) * (i + 0.5) / grid.nx,
                          y0 + (y1 - y0) * (j + 0.5) / grid.ny);
  std::stable_sort(probes.begin() + 1, probes.end(), [&](cplx a, cplx c) {
    return std::abs(a - centroid) < std::abs(c - centroid);
  });

  GapVerdict v;
  for (const cplx& e : probes) {
    ++v.probes;
    try {
      const WindingResult w = winding_number(b, e);
      if (w.w != 0) {
        v.point_gap = true;
        v.witness = e;
        v.witness_w = w.w;
        return v;
      }
    } catch (const Error&) {
      // Probe on or too close to the spectral curve.
    }
  }
  return v;
}

cplx tridiag_bloch_det(cplx t_l, cplx t_r, double k, int n2) {
  if (n2 < 1) throw Error("tridiag_bloch_det: N2 must be positive");
  const cplx e = std::polar(1.0, k);
  const cplx a = t_l / e + t_r * e;
  const cplx bc = (t_r + t_l * e) * (t_l + t_r / e);
  cplx before{1.0}, cur = a;
  for (int m = 2; m <= n2; ++m) {
    const cplx next = a * cur - bc * before;
    before = cur;
    cur = next;
  }
  return cur;
}

DetWinding tridiag_det_winding(cplx t_l, cplx t_r, int n2, int n_samples) {
  if (n2 < 2) throw Error("tridiag_det_winding: N2 must be at least 2");
  DetWinding out;
  const double ratio = std::abs(t_r / t_l);
  out.phase_condition = std::abs(ratio - 1.0) <= 1e-12;

  const int n = std::max(n_samples, 64);
  std::vector<cplx> pts(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    pts[i] = tridiag_bloch_det(t_l, t_r, grid_k(i, n), n2);
    scale = std::max(scale, std::abs(pts[i]));
  }
  double area = 0.0;
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (int i = 0; i < n; ++i) {
    const cplx a = pts[i], b = pts[(i + 1) % n];
    area += a.real() * b.imag() - b.real() * a.imag();
    x0 = std::min(x0, a.real());
    x1 = std::max(x1, a.real());
    y0 = std::min(y0, a.imag());
    y1 = std::max(y1, a.imag());
  }
  if (std::abs(0.5 * area) <= 1e-9 * scale * scale || scale == 0.0) {
    out.degenerate = true;
    out.winding.samples = n;
    return out;
  }

  auto det_minus = [&](cplx base) {
    return [=](double k) { return tridiag_bloch_det(t_l, t_r, k, n2) - base; };
  };
  std::vector<cplx> candidates{cplx{0.0}};
  constexpr int kGrid = 16;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j)
      candidates.emplace_back(x0 + (x1 - x0) * (i + 0.5) / kGrid,
                              y0 + (y1 - y0) * (j + 0.5) / kGrid);
  bool any = false;
  for (const cplx& c : candidates) {
    try {
      WindingResult w = converge(det_minus(c), c, n);
      if (!any) {
        out.winding = w;
        any = true;
      }
      if (w.w != 0) {
        out.winding = w;
        return out;
      }
    } catch (const Error&) {
      // Candidate on the curve.
    }
  }
  return out;
}

}  // namespace nhskin
