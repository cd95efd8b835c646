#include "nhskin/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace nhskin {

std::vector<Spectrum> delta_sweep(const SpectrumAt& model, const std::vector<cplx>& grid,
                                  int threads) {
  std::vector<Spectrum> out(grid.size());
  const int n = static_cast<int>(grid.size());
  threads = std::clamp(threads, 1, std::max(n, 1));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = model(grid[static_cast<std::size_t>(i)]);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += threads)
          out[static_cast<std::size_t>(i)] = model(grid[static_cast<std::size_t>(i)]);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<cplx> delta_grid(double from, double to, double step) {
  if (!(step > 0.0)) throw Error("delta_grid: step must be positive");
  const long count = std::lround((to - from) / step);
  std::vector<cplx> g;
  for (long i = 0; i <= count; ++i) g.emplace_back(from + static_cast<double>(i) * step, 0.0);
  return g;
}

namespace {

double directed(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (const cplx& x : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() || b.empty()) throw Error("hausdorff: empty point set");
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff(const Spectrum& a, const Spectrum& b) { return hausdorff(a.values, b.values); }

std::vector<cplx> without_smallest(std::vector<cplx> values, int k) {
  if (k <= 0) return values;
  std::stable_sort(values.begin(), values.end(),
                   [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  values.erase(values.begin(), values.begin() + std::min<std::ptrdiff_t>(k, std::ssize(values)));
  return values;
}

CriticalDelta critical_delta(const SpectrumFamily& family, int n, double target,
                             int exclude_smallest, int max_iterations,
                             double relative_tolerance) {
  if (!(target > 0.0)) throw Error("critical_delta: target must be positive");
  const std::vector<cplx> base = without_smallest(family(n, 0.0).values, exclude_smallest);
  auto moved = [&](double d) {
    return hausdorff(base, without_smallest(family(n, d).values, exclude_smallest)) >= target;
  };
  CriticalDelta c;
  c.n = n;
  if (!moved(1.0)) return c;
  c.reached = true;
  // Coarse decade scan from above, then geometric bisection inside the bracketing decade.
  double hi = 1.0, lo = 0.0;
  for (int k = 1; k <= 16; ++k) {
    const double d = std::pow(10.0, -k);
    if (!moved(d)) {
      lo = d;
      break;
    }
    hi = d;
  }
  if (lo == 0.0) {
    c.delta = hi;
    return c;
  }
  for (int it = 0; it < max_iterations && hi / lo - 1.0 > relative_tolerance; ++it) {
    const double mid = std::sqrt(lo * hi);
    (moved(mid) ? hi : lo) = mid;
  }
  c.delta = hi;
  return c;
}

ExponentResult sensitivity_exponent(const SpectrumFamily& family, const ExponentOptions& opt) {
  if (opt.sizes.size() < 4) throw Error("sensitivity_exponent: need at least 4 sizes");
  ExponentResult r;
  std::vector<double> xs, ys;
  for (int n : opt.sizes) {
    CriticalDelta c = critical_delta(family, n, opt.target, opt.exclude_smallest,
                                     opt.max_iterations, opt.relative_tolerance);
    r.points.push_back(c);
    if (c.reached) {
      xs.push_back(n);
      ys.push_back(std::log(c.delta));
    }
  }
  r.fitted = static_cast<int>(xs.size());
  if (r.fitted >= 2) {
    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
      syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxx > 0 ? sxy / sxx : 0.0;
    r.xi = -slope;
    r.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 0.0;
  }
  r.exponential = r.fitted >= 3 && r.xi > kMinExponent && r.r2 >= kMinR2;
  return r;
}

SensitivityScreen classify_sensitivity(const SpectrumAt& model, double eps, double threshold) {
  const Spectrum s0 = model(0.0), s1 = model(eps), s2 = model(2.0 * eps);
  SensitivityScreen v;
  v.first_step = hausdorff(s0, s1);
  v.second_step = hausdorff(s1, s2);
  if (v.second_step > 0.0) {
    v.ratio = v.first_step / v.second_step;
  } else {
    v.ratio = v.first_step > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  v.exponential = v.ratio > threshold;
  return v;
}

}  // namespace nhskin
