#include "nhskin/models1d.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nhskin/oracle.hpp"

namespace nhskin {

namespace {

cplx to_d(cld z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }
cld to_ld(cplx z) { return cld(z.real(), z.imag()); }

void oracle_fallback(Spectrum& out, const Matrix& h, const std::string& why) {
  Spectrum s = dense_spectrum(h).spectrum;
  out.values = std::move(s.values);
  out.provenance = Provenance::oracle;
  out.fallback = true;
  out.note = why;
}

}  // namespace

Matrix hn_matrix(const HNParams& p, int n) {
  return build_chain_matrix(
      hn_stencil(n, p.t_d, p.t_l, p.t_r, p.delta_l, p.delta_r, p.eps_first, p.eps_last));
}

Matrix ssh_matrix(const SSHParams& p) {
  return build_chain_matrix(
      ssh_stencil(p.n, p.t_l1, p.t_r1, p.t_l2, p.t_r2, p.v1, p.v2, p.delta_l, p.delta_r));
}

ModelSpectrum hn_spectrum(const HNParams& p, int n) {
  if (n < 2) throw Error("hn_spectrum: need at least 2 sites");
  ModelSpectrum out;
  out.spectrum.params = {{"t_d", p.t_d},         {"t_l", p.t_l},           {"t_r", p.t_r},
                         {"eps_first", p.eps_first}, {"eps_last", p.eps_last}, {"delta_l", p.delta_l},
                         {"delta_r", p.delta_r}};
  if (p.t_l == cplx{0.0} || p.t_r == cplx{0.0}) {
    oracle_fallback(out.spectrum, hn_matrix(p, n), "zero hopping: analytic path unavailable");
    return out;
  }
  HNEquation eq{n, p.t_l, p.t_r, p.eps_first, p.eps_last, p.delta_l, p.delta_r};
  out.alpha = alpha_from_roots(roots(polynomialize(eq)), Pairing::reciprocal, n);
  out.alpha.generator = "hn";
  out.alpha.shift = cplx(0.0, -0.5) * std::log(p.t_r / p.t_l);
  const cld g = cld{2.0L} * std::sqrt(to_ld(p.t_l)) * std::sqrt(to_ld(p.t_r));
  for (const cld& c : out.alpha.cosines) out.spectrum.values.push_back(p.t_d + to_d(g * c));
  return out;
}

Vector hn_eigenvector(const HNParams& p, cplx alpha, cplx delta, int n) {
  const cplx q = std::sqrt(p.t_r) / std::sqrt(p.t_l);
  const cplx qn = std::pow(q, n);
  Vector v(n);
  for (int site = 1; site <= n; ++site) {
    v(site - 1) = std::pow(q, site) * (std::sin(static_cast<double>(site) * alpha) +
                                       delta * qn * std::sin(static_cast<double>(n - site) * alpha));
  }
  if (!(v.norm() > 0.0) || !std::isfinite(v.norm())) {
    std::ostringstream os;
    os << "hn_eigenvector: vector vanishes for alpha = " << alpha;
    throw Error(os.str());
  }
  return v;
}

BalanceResult hn_balanced(const HNParams& p) {
  const double a = std::abs(p.t_l), b = std::abs(p.t_r);
  BalanceResult r;
  r.balanced = std::abs(a - b) <= 1e-12 * (a + b);
  r.theta = std::arg(p.t_r / p.t_l);
  return r;
}

ModelSpectrum ssh_spectrum(const SSHParams& p) {
  const int n = p.n;
  if (n < 2) throw Error("ssh_spectrum: need at least 2 sites");
  ModelSpectrum out;
  out.spectrum.params = {{"t_l1", p.t_l1}, {"t_r1", p.t_r1}, {"t_l2", p.t_l2}, {"t_r2", p.t_r2},
                         {"v1", p.v1},     {"v2", p.v2},     {"delta_l", p.delta_l},
                         {"delta_r", p.delta_r}};
  const bool zero_hop = p.t_l1 == cplx{0.0} || p.t_r1 == cplx{0.0} || p.t_l2 == cplx{0.0} ||
                        p.t_r2 == cplx{0.0};
  if (zero_hop) {
    oracle_fallback(out.spectrum, ssh_matrix(p), "zero hopping: analytic path unavailable");
    return out;
  }
  const cld sl1 = std::sqrt(to_ld(p.t_l1)), sr1 = std::sqrt(to_ld(p.t_r1));
  const cld sl2 = std::sqrt(to_ld(p.t_l2)), sr2 = std::sqrt(to_ld(p.t_r2));
  const cld g = sl1 * sl2 * sr1 * sr2;
  const cld base = to_ld(p.t_l1) * to_ld(p.t_r1) + to_ld(p.t_l2) * to_ld(p.t_r2);
  auto lambda_sq = [&](cld c) { return base + cld{2.0L} * c * g; };

  if (n % 2 == 0) {
    SSHEquation eq{n, p.t_l1, p.t_r1, p.t_l2, p.t_r2, p.delta_l, p.delta_r};
    out.alpha = alpha_from_roots(roots(polynomialize(eq)), Pairing::reciprocal, n / 2);
    out.alpha.generator = "ssh-even";
    const cld mid = (to_ld(p.v1) + to_ld(p.v2)) / cld{2.0L};
    const cld v = to_ld(p.half_difference());
    for (const cld& c : out.alpha.cosines) {
      const cld s = std::sqrt(v * v + lambda_sq(c));
      out.spectrum.values.push_back(to_d(mid + s));
      out.spectrum.values.push_back(to_d(mid - s));
    }
    return out;
  }

  if (p.v1 != p.v2) {
    oracle_fallback(out.spectrum, ssh_matrix(p), "odd length with staggered potential");
    return out;
  }
  const cplx shift = p.v1;
  const int l = (n - 1) / 2;
  out.alpha.generator = "ssh-odd";
  if (p.delta_l == cplx{0.0} || p.delta_r == cplx{0.0}) {
    if (p.delta_l == cplx{0.0} && p.delta_r == cplx{0.0}) {
      // Open chain: sin((L+1) a) = 0 gives L wavenumbers with both signs, plus the zero mode.
      for (int k = 1; k <= l; ++k) {
        const long double a = std::numbers::pi_v<long double> * k / (l + 1);
        const cld c = std::cos(a);
        const cld s = std::sqrt(lambda_sq(c));
        out.alpha.values.emplace_back(static_cast<double>(a), 0.0);
        out.alpha.cosines.push_back(c);
        out.alpha.y.push_back(std::polar(1.0L, a));
        out.spectrum.values.push_back(shift + to_d(s));
        out.spectrum.values.push_back(shift - to_d(s));
      }
      const cld c0 = -base / (cld{2.0L} * g);
      const cld a0 = std::acos(c0);
      out.alpha.values.push_back(to_d(a0));
      out.alpha.cosines.push_back(c0);
      out.alpha.y.push_back(std::exp(cld(0.0L, 1.0L) * a0));
      out.spectrum.values.push_back(shift);
      out.alpha.multiplicity.assign(out.alpha.values.size(), 1);
      return out;
    }
  }
  SSHEquation eq{n, p.t_l1, p.t_r1, p.t_l2, p.t_r2, p.delta_l, p.delta_r};
  out.alpha = alpha_from_roots(roots(polynomialize(eq)), Pairing::reciprocal, n);
  out.alpha.generator = "ssh-odd";
  const cld q = sr1 * sr2 / (sl1 * sl2);
  const cld rhs = to_ld(p.delta_r) * sr1 * sr2 * std::pow(q, l) +
                  to_ld(p.delta_l) * sl1 * sl2 * std::pow(q, -l);
  const Laurent dd = dirichlet_laurent(l + 1) - dirichlet_laurent(l) * (to_ld(p.delta_l) * to_ld(p.delta_r));
  bool unstable = false;
  std::vector<cld> magnitudes;
  std::vector<int> signs;
  for (std::size_t i = 0; i < out.alpha.size(); ++i) {
    const cld s = std::sqrt(lambda_sq(out.alpha.cosines[i]));
    magnitudes.push_back(s);
    if (std::abs(s) < 1e-12L) {
      signs.push_back(1);
      continue;
    }
    if (std::abs(rhs) < 1e-300L) {
      unstable = true;
      signs.push_back(1);
      continue;
    }
    const cld sigma = s * dd(out.alpha.y[i]) / rhs;
    if (std::abs(std::abs(sigma) - 1.0L) > 1e-3L) unstable = true;
    signs.push_back(sigma.real() >= 0 ? 1 : -1);
  }
  if (unstable) {
    // Choose each sign by proximity to the dense spectrum.
    const auto dense = dense_spectrum(ssh_matrix(p)).spectrum.values;
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
      const cplx s = to_d(magnitudes[i]);
      double dp = 1e300, dm = 1e300;
      for (const cplx& e : dense) {
        dp = std::min(dp, std::abs(shift + s - e));
        dm = std::min(dm, std::abs(shift - s - e));
      }
      signs[i] = dp <= dm ? 1 : -1;
    }
    out.spectrum.fallback = true;
    out.spectrum.note = "root sign unstable: signs taken from the dense spectrum";
  }
  for (std::size_t i = 0; i < magnitudes.size(); ++i)
    out.spectrum.values.push_back(shift + static_cast<double>(signs[i]) * to_d(magnitudes[i]));
  return out;
}

ZeroModeVerdict ssh_zero_mode_predicate(const SSHParams& p) {
  // r_1 is the geometric mean of the inter-cell over intra-cell hopping ratios.
  const double r1 = std::sqrt(std::abs(p.t_l2 * p.t_r2 / (p.t_l1 * p.t_r1)));
  ZeroModeVerdict v;
  v.margin = r1 - 1.0;
  v.indeterminate = std::abs(v.margin) <= 1e-12;
  v.predicted = !v.indeterminate && r1 > 1.0;
  return v;
}

BalanceResult ssh_balanced(const SSHParams& p) {
  const double a = std::abs(p.t_r1 * p.t_r2), b = std::abs(p.t_l1 * p.t_l2);
  BalanceResult r;
  r.balanced = std::abs(a - b) <= 1e-12 * (a + b);
  r.theta = std::arg(p.t_r1 * p.t_r2 / (p.t_l1 * p.t_l2));
  return r;
}

Spectrum unidirectional_spectrum(cplx t_l, cplx u_l, cplx delta, int n) {
  if (n < 3) throw Error("unidirectional_spectrum: need at least 3 sites");
  Spectrum s;
  s.params = {{"t_l", t_l}, {"u_l", u_l}, {"delta", delta}};
  const double mag = std::abs(delta);
  const double phi = std::arg(delta);
  for (int j = 0; j < n; ++j) {
    if (mag == 0.0) {
      s.values.emplace_back(0.0);
      continue;
    }
    const cplx z = std::polar(std::pow(mag, 1.0 / n), phi / n + 2.0 * std::numbers::pi * j / n);
    s.values.push_back(t_l * z + u_l * z * z);
  }
  return s;
}

ModelSpectrum mixed_longrange_spectrum(cplx t_r, cplx u_l, cplx delta, int n) {
  if (u_l == cplx{0.0}) throw Error("mixed_longrange_spectrum: u_l must be nonzero");
  if (n < 3) throw Error("mixed_longrange_spectrum: need at least 3 sites");
  ModelSpectrum out;
  out.spectrum.params = {{"t_r", t_r}, {"u_l", u_l}, {"delta", delta}};
  MixedEquation eq{n, t_r, u_l, delta};
  const cld ul = to_ld(u_l), tr = to_ld(t_r);
  out.alpha = alpha_from_roots(roots(polynomialize(eq)), Pairing::triple, n,
                               [&](cld y) { return ul * y * y + tr / y; });
  out.alpha.generator = "mixed-longrange";
  out.spectrum.values = out.alpha.class_values;
  return out;
}

cplx bloch_1d(const LongRangeParams& p, double k) {
  const cplx e1 = std::polar(1.0, k), e2 = std::polar(1.0, 2.0 * k);
  return p.t_l * e1 + p.t_r * std::conj(e1) + p.u_l * e2 + p.u_r * std::conj(e2);
}

LongRangeParams triangle_chain(cplx t_l, cplx t_r) { return {t_l, t_r, t_r, t_l}; }

LongRangeParams nonwinding_family(int family, double t, double u, double phi, double phi1,
                                  double phi2) {
  auto e = [](double a) { return std::polar(1.0, a); };
  switch (family) {
    case 1:
      return {t * e(phi + phi1 / 2), t * e(phi - phi1 / 2), u * e(phi + phi2 / 2),
              u * e(phi - phi2 / 2)};
    case 2:
      return {t * e(phi1), t * e(phi2), t * e(phi1 + phi), t * e(phi2 - phi)};
    case 3:
      return {t * e(phi1), t * e(phi1 + phi), u * e(phi2), u * e(phi2 + 2 * phi)};
    default:
      throw Error("nonwinding_family: family must be 1, 2 or 3");
  }
}

}  // namespace nhskin
