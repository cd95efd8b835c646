#include "nhskin/generic.hpp"

#include <algorithm>
#include <cmath>

#include "nhskin/poly.hpp"

namespace nhskin {

double verify_generic(const ChainStencil& stencil, cplx lambda, cplx delta) {
  ChainStencil s = stencil;
  s.set_delta(delta);
  return verify_generic(s, lambda);
}

double verify_generic(const ChainStencil& s, cplx lambda) {
  const int mp = s.max_positive();
  const int mn = s.max_negative();
  if (mp > 2 || mn > 2) throw Error("verify_generic: only offsets up to +-2 are supported");
  for (const auto& [d, amps] : s.hoppings)
    if (amps.size() != 1) throw Error("verify_generic: hoppings must be translation invariant");
  if (s.onsite.size() != 1) throw Error("verify_generic: onsite pattern must be uniform");
  const int k = mp + mn;
  if (k == 0) throw Error("verify_generic: stencil has no hoppings");
  if (s.hop(mp, 0) == cplx{0.0} || s.hop(-mn, 0) == cplx{0.0})
    throw Error("verify_generic: outermost hoppings must be nonzero");
  const int n = s.size;

  // x^mn (sum_d t_d x^d + t_0 - lambda) = 0, ascending in x.
  std::vector<cld> c(static_cast<std::size_t>(k + 1), 0.0L);
  for (const auto& [d, amps] : s.hoppings)
    c[static_cast<std::size_t>(d + mn)] += cld(amps[0].real(), amps[0].imag());
  const cplx diag = s.onsite[0] - lambda;
  c[static_cast<std::size_t>(mn)] += cld(diag.real(), diag.imag());
  PolyY p;
  p.coeffs = c;
  std::vector<cld> xr = roots(p);
  std::vector<cplx> x(xr.size());
  for (std::size_t i = 0; i < xr.size(); ++i)
    x[i] = cplx(static_cast<double>(xr[i].real()), static_cast<double>(xr[i].imag()));

  // Basis vectors over sites 0..n-1; repeated roots use n x^n.
  Matrix basis(n, k);
  for (int i = 0; i < k; ++i) {
    int order = 0;
    for (int j = 0; j < i; ++j)
      if (std::abs(x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(i)]) <
          1e-10 * std::max(1.0, std::abs(x[static_cast<std::size_t>(i)])))
        ++order;
    const cplx xi = x[static_cast<std::size_t>(i)];
    // Normalise by the largest modulus so that entries stay finite.
    const double lmax = std::max(0.0, (n - 1) * std::log(std::abs(xi)));
    for (int site = 0; site < n; ++site) {
      const double mag = std::exp(site * std::log(std::abs(xi)) - lmax);
      const cplx phase = std::polar(1.0, site * std::arg(xi));
      basis(site, i) = mag * phase * std::pow(static_cast<double>(site + 1), order);
    }
    basis.col(i) /= basis.col(i).cwiseAbs().maxCoeff();
  }

  Matrix h = build_chain_matrix(s);
  h.diagonal().array() -= lambda;
  std::vector<int> rows;
  for (int i = 0; i < n; ++i)
    if (i < mn || i >= n - mp) rows.push_back(i);
  if (static_cast<int>(rows.size()) != k)
    throw Error("verify_generic: chain too short for a separate boundary system");
  Matrix m(k, k);
  for (int r = 0; r < k; ++r) m.row(r) = h.row(rows[static_cast<std::size_t>(r)]) * basis;
  for (int r = 0; r < k; ++r) {
    const double norm = h.row(rows[static_cast<std::size_t>(r)]).norm();
    if (norm > 0.0) m.row(r) /= norm;
  }
  if (!m.allFinite()) throw Error("verify_generic: boundary matrix is not finite");
  return std::abs(m.determinant());
}

}  // namespace nhskin
