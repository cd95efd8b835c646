#include "nhskin/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nhskin {

namespace {

std::vector<double> unit_sum(std::vector<double> w) {
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  if (s > 0.0)
    for (double& x : w) x /= s;
  return w;
}

}  // namespace

StateProfiles expectation_profiles(const Vector& psi_r, const Vector& psi_l,
                                   Normalization convention) {
  if (psi_r.size() != psi_l.size()) throw Error("expectation_profiles: vector lengths differ");
  const auto n = static_cast<std::size_t>(psi_r.size());
  StateProfiles p;
  p.convention = convention;
  p.right_right.resize(n);
  p.left_left.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.right_right[i] = std::norm(psi_r(static_cast<Eigen::Index>(i)));
    p.left_left[i] = std::norm(psi_l(static_cast<Eigen::Index>(i)));
  }
  p.right_right = unit_sum(std::move(p.right_right));
  p.left_left = unit_sum(std::move(p.left_left));

  const cplx overlap = psi_l.dot(psi_r);
  const double scale = psi_l.norm() * psi_r.norm();
  if (scale == 0.0 || std::abs(overlap) <= 1e-14 * scale) {
    p.near_exceptional = true;
    return p;
  }
  std::vector<cplx> lr(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    lr[i] = std::conj(psi_l(k)) * psi_r(k) / overlap;
  }
  p.left_right = std::move(lr);
  return p;
}

LocalizationReport localization_report(const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  if (n < 10) throw Error("localization_report: need at least 10 sites");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw Error("localization_report: profile is identically zero");

  LocalizationReport r;
  const int edge = std::max(1, static_cast<int>(std::lround(0.1 * n)));
  for (int i = 0; i < n; ++i) {
    const double w = weights[static_cast<std::size_t>(i)] / total;
    r.center_of_mass += i * w;
    if (i < edge) r.left_edge_fraction += w;
    if (i >= n - edge) r.right_edge_fraction += w;
  }
  r.left_edge_fraction = std::clamp(r.left_edge_fraction, 0.0, 1.0);
  r.right_edge_fraction = std::clamp(r.right_edge_fraction, 0.0, 1.0);

  double left_half = 0.0, right_half = 0.0;
  for (int i = 0; i < n / 2; ++i) left_half += weights[static_cast<std::size_t>(i)];
  for (int i = n - n / 2; i < n; ++i) right_half += weights[static_cast<std::size_t>(i)];
  r.heavier_right = right_half > left_half;

  // Least squares of ln w against distance from the heavier edge, skipping 2 boundary sites.
  std::vector<double> xs, ys;
  for (int k = 2; k < n / 2; ++k) {
    const int site = r.heavier_right ? n - 1 - k : k;
    const double w = weights[static_cast<std::size_t>(site)] / total;
    if (w <= 0.0) continue;
    xs.push_back(k);
    ys.push_back(std::log(w));
  }
  if (xs.size() >= 2) {
    const double m = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
      syy += (ys[i] - my) * (ys[i] - my);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    r.decay_rate = -slope;
    r.fit_r2 = (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  }
  return r;
}

LocalizationReport localization_report(const StateProfiles& profile) {
  return localization_report(profile.right_right);
}

std::vector<double> marginal_direction1(const std::vector<double>& weights, int n1, int n2,
                                        int cell) {
  if (static_cast<long>(weights.size()) != static_cast<long>(n1) * n2 * cell)
    throw Error("marginal_direction1: weight count does not match n1*n2*cell");
  std::vector<double> m(static_cast<std::size_t>(n1), 0.0);
  for (int y = 0; y < n2; ++y)
    for (int x = 0; x < n1; ++x)
      for (int s = 0; s < cell; ++s)
        m[static_cast<std::size_t>(x)] +=
            weights[static_cast<std::size_t>((y * n1 + x) * cell + s)];
  return m;
}

std::size_t representative_index(const std::vector<cplx>& values) {
  if (values.empty()) throw Error("representative_index: empty spectrum");
  std::vector<double> mods(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) mods[i] = std::abs(values[i]);
  std::vector<double> sorted = mods;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t k = sorted.size();
  const double median = k % 2 ? sorted[k / 2] : 0.5 * (sorted[k / 2 - 1] + sorted[k / 2]);
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (std::abs(mods[i] - median) < std::abs(mods[best] - median)) best = i;
  return best;
}

}  // namespace nhskin
