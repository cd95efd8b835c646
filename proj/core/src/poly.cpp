#include "nhskin/poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <lapacke.h>

namespace nhskin {

Laurent::Laurent(int low, std::vector<cld> coeffs) : low_(low), c_(std::move(coeffs)) { trim(); }

Laurent Laurent::constant(cld value) { return Laurent(0, {value}); }

Laurent Laurent::monomial(int power, cld coeff) { return Laurent(power, {coeff}); }

cld Laurent::coeff(int power) const {
  const int k = power - low_;
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0.0L;
  return c_[static_cast<std::size_t>(k)];
}

cld Laurent::operator()(cld y) const {
  cld acc = 0.0L;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * y + *it;
  return acc * std::pow(y, low_);
}

void Laurent::trim() {
  std::size_t first = 0;
  while (first < c_.size() && c_[first] == cld{0.0L}) ++first;
  std::size_t last = c_.size();
  while (last > first && c_[last - 1] == cld{0.0L}) --last;
  if (first == last) {
    c_.clear();
    low_ = 0;
    return;
  }
  c_ = std::vector<cld>(c_.begin() + static_cast<long>(first), c_.begin() + static_cast<long>(last));
  low_ += static_cast<int>(first);
}

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.empty()) return *this;
  if (empty()) return *this = o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high(), o.high());
  std::vector<cld> r(static_cast<std::size_t>(hi - lo + 1), 0.0L);
  for (int p = low_; p <= high(); ++p) r[static_cast<std::size_t>(p - lo)] += coeff(p);
  for (int p = o.low_; p <= o.high(); ++p) r[static_cast<std::size_t>(p - lo)] += o.coeff(p);
  low_ = lo;
  c_ = std::move(r);
  trim();
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += o * cld{-1.0L}; }

Laurent& Laurent::operator*=(cld s) {
  for (auto& x : c_) x *= s;
  trim();
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cld> r(a.c_.size() + b.c_.size() - 1, 0.0L);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return Laurent(a.low_ + b.low_, std::move(r));
}

Laurent dirichlet_laurent(int n) {
  if (n == 0) return {};
  const int m = std::abs(n);
  const long double sign = n > 0 ? 1.0L : -1.0L;
  // Powers m-1, m-3, ..., -(m-1).
  std::vector<cld> c(static_cast<std::size_t>(2 * m - 1), 0.0L);
  for (int k = 0; k < m; ++k) c[static_cast<std::size_t>(2 * k)] = sign;
  return Laurent(-(m - 1), std::move(c));
}

cplx dirichlet_ratio(int n, cplx alpha) {
  if (n == 0) return 0.0;
  if (n < 0) return -dirichlet_ratio(-n, alpha);
  const cplx s = std::sin(alpha);
  if (std::abs(s) > 1e-3) return std::sin(static_cast<double>(n) * alpha) / s;
  // Chebyshev U_{n-1}(cos a).
  const cplx c = std::cos(alpha);
  cplx u0 = 1.0, u1 = 2.0 * c;
  if (n == 1) return u0;
  for (int k = 2; k < n; ++k) {
    const cplx u2 = 2.0 * c * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

cld PolyY::operator()(cld y) const { return derivative(y, 0); }

cld PolyY::derivative(cld y, int k) const {
  cld acc = 0.0L;
  for (int j = degree(); j >= k; --j) {
    long double f = 1.0L;
    for (int t = 0; t < k; ++t) f *= static_cast<long double>(j - t);
    acc = acc * y + coeffs[static_cast<std::size_t>(j)] * f;
  }
  return acc;
}

PolyY to_poly(const Laurent& l) {
  PolyY p;
  if (l.empty()) throw Error("to_poly: polynomial is identically zero");
  p.coeffs = l.coeffs();
  p.shift = -l.low();
  return p;
}

PolyY divide(const PolyY& p, const std::vector<cld>& divisor, long double* relative_remainder) {
  std::vector<cld> d = divisor;
  while (!d.empty() && d.back() == cld{0.0L}) d.pop_back();
  if (d.empty()) throw Error("divide: zero divisor");
  const int dn = static_cast<int>(d.size()) - 1;
  const int pn = p.degree();
  if (pn < dn) throw Error("divide: divisor degree exceeds dividend degree");
  std::vector<cld> rem = p.coeffs;
  std::vector<cld> q(static_cast<std::size_t>(pn - dn + 1), 0.0L);
  for (int k = pn - dn; k >= 0; --k) {
    const cld f = rem[static_cast<std::size_t>(k + dn)] / d.back();
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= dn; ++j) rem[static_cast<std::size_t>(k + j)] -= f * d[static_cast<std::size_t>(j)];
  }
  long double rmax = 0.0L, pmax = 0.0L;
  for (int j = 0; j < dn; ++j) rmax = std::max(rmax, std::abs(rem[static_cast<std::size_t>(j)]));
  for (const auto& c : p.coeffs) pmax = std::max(pmax, std::abs(c));
  if (relative_remainder) *relative_remainder = pmax > 0 ? rmax / pmax : rmax;
  PolyY out;
  out.coeffs = std::move(q);
  out.shift = p.shift;
  out.removed_factors = p.removed_factors;
  return out;
}

namespace {

template <typename T>
using CMat = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

/// Parlett-Reinsch diagonal balancing in the 1-norm, radix 2.
template <typename T>
void balance(CMat<T>& a) {
  const Eigen::Index n = a.rows();
  bool done = false;
  for (int sweep = 0; sweep < 100 && !done; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      T c = 0, r = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == T(0) || r == T(0)) continue;
      T g = r / 2, f = 1, s = c + r;
      while (c < g) {
        f *= 2;
        c *= 4;
      }
      g = r * 2;
      while (c > g) {
        f /= 2;
        c /= 4;
      }
      if ((c + r) / f < T(0.95) * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

template <typename T>
std::vector<cld> companion_roots(const std::vector<cld>& coeffs) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  CMat<T> c = CMat<T>::Zero(d, d);
  const cld lead = coeffs.back();
  for (int j = 0; j < d; ++j) {
    const cld v = -coeffs[static_cast<std::size_t>(d - 1 - j)] / lead;
    c(0, j) = std::complex<T>(static_cast<T>(v.real()), static_cast<T>(v.imag()));
  }
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1;
  balance<T>(c);
  Eigen::ComplexEigenSolver<CMat<T>> es(c, false);
  if (es.info() != Eigen::Success) throw Error("roots: companion eigensolver did not converge");
  std::vector<cld> out(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const auto z = es.eigenvalues()(i);
    out[static_cast<std::size_t>(i)] = cld(z.real(), z.imag());
  }
  return out;
}

/// Double-precision companion roots; the balanced companion matrix is already Hessenberg.
std::vector<cld> hessenberg_companion_roots(const std::vector<cld>& coeffs) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  CMat<double> c = CMat<double>::Zero(d, d);
  const cld lead = coeffs.back();
  for (int j = 0; j < d; ++j) {
    const cld v = -coeffs[static_cast<std::size_t>(d - 1 - j)] / lead;
    c(0, j) = std::complex<double>(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1;
  balance<double>(c);
  std::vector<lapack_complex_double> w(static_cast<std::size_t>(d));
  lapack_complex_double dummy{};
  const lapack_int info = LAPACKE_zhseqr(
      LAPACK_COL_MAJOR, 'E', 'N', d, 1, d, reinterpret_cast<lapack_complex_double*>(c.data()), d,
      w.data(), &dummy, 1);
  if (info != 0) throw Error("roots: Hessenberg QR did not converge (info " + std::to_string(info) + ")");
  std::vector<cld> out(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const auto* z = reinterpret_cast<const double*>(&w[static_cast<std::size_t>(i)]);
    out[static_cast<std::size_t>(i)] = cld(z[0], z[1]);
  }
  return out;
}

/// Sum |c_j| j!/(j-k)! |y|^(j-k): scale for the k-th derivative residual.
long double derivative_scale(const PolyY& p, cld y, int k) {
  const long double r = std::abs(y);
  long double acc = 0.0L;
  for (int j = p.degree(); j >= k; --j) {
    long double f = 1.0L;
    for (int t = 0; t < k; ++t) f *= static_cast<long double>(j - t);
    acc = acc * r + std::abs(p.coeffs[static_cast<std::size_t>(j)]) * f;
  }
  return acc;
}

cld newton_polish(const PolyY& p, cld y, int order, int steps) {
  cld best = y;
  long double best_res = std::abs(p.derivative(y, order));
  for (int s = 0; s < steps; ++s) {
    const cld d = p.derivative(best, order + 1);
    if (d == cld{0.0L}) break;
    const cld next = best - p.derivative(best, order) / d;
    const long double res = std::abs(p.derivative(next, order));
    if (!(res < best_res)) break;
    best = next;
    best_res = res;
  }
  return best;
}

}  // namespace

std::vector<cld> roots(const PolyY& poly, RootPrecision precision) {
  PolyY p = poly;
  while (!p.coeffs.empty() && p.coeffs.back() == cld{0.0L}) p.coeffs.pop_back();
  if (p.degree() < 1) throw Error("roots: polynomial of degree " + std::to_string(p.degree()) +
                                  " has no roots to find");

  std::vector<cld> out;
  std::size_t zeros = 0;
  while (zeros < p.coeffs.size() && p.coeffs[zeros] == cld{0.0L}) ++zeros;
  out.assign(zeros, cld{0.0L});
  PolyY q;
  q.coeffs.assign(p.coeffs.begin() + static_cast<long>(zeros), p.coeffs.end());
  if (q.degree() < 1) return out;

  std::vector<cld> r = precision == RootPrecision::extended   ? companion_roots<long double>(q.coeffs)
                       : precision == RootPrecision::standard ? companion_roots<double>(q.coeffs)
                                                              : hessenberg_companion_roots(q.coeffs);
  for (auto& y : r) y = newton_polish(q, y, 0, precision == RootPrecision::hybrid ? 5 : 3);
  if (precision == RootPrecision::hybrid) {
    const long double limit = 1e3L * static_cast<long double>(std::numeric_limits<double>::epsilon());
    for (const cld& y : r)
      if (std::abs(q(y)) > limit * derivative_scale(q, y, 0)) {
        return roots(poly, RootPrecision::extended);
      }
  }

  // Nearby roots are collapsed when the polished centroid is itself a multiple root: q and its first
  // m - 2 derivatives vanish to long double rounding there. Distinct roots a distance s apart leave
  // |q| of order |q^(m) / m!| s^m at that point, so only a genuine m-fold root passes.
  const long double eps = std::numeric_limits<long double>::epsilon();
  auto try_collapse = [&](const std::vector<std::size_t>& g) {
    const int m = static_cast<int>(g.size());
    cld centroid = 0.0L;
    for (auto i : g) centroid += r[i];
    centroid /= static_cast<long double>(m);
    const cld y = newton_polish(q, centroid, m - 1, 60);
    if (!(std::abs(q.derivative(y, m)) > 0.0L)) return false;
    for (int k = 0; k + 1 < m; ++k)
      if (std::abs(q.derivative(y, k)) > 100.0L * eps * derivative_scale(q, y, k)) return false;
    for (auto i : g) r[i] = y;
    return true;
  };
  auto clusters = [&](const std::vector<std::size_t>& members, long double radius) {
    std::map<std::size_t, std::size_t> parent;
    for (auto i : members) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
      return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const auto i = members[a], j = members[b];
        if (std::abs(r[i] - r[j]) < radius * std::max(1.0L, std::abs(r[i])))
          parent[find(i)] = find(j);
      }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (auto i : members) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, g] : groups)
      if (g.size() > 1) out.push_back(std::move(g));
    return out;
  };
  std::vector<std::size_t> all(r.size());
  std::iota(all.begin(), all.end(), 0);
  for (const auto& g : clusters(all, 1e-4L)) {
    if (try_collapse(g)) continue;
    for (const auto& sub : clusters(g, 1e-7L)) try_collapse(sub);
  }
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace nhskin
