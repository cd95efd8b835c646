#pragma once

#include "nhskin/types.hpp"

namespace nhskin {

/// Finite Laurent series sum_k c[k] y^(low + k).
class Laurent {
 public:
  Laurent() = default;
  Laurent(int low, std::vector<cld> coeffs);

  static Laurent constant(cld value);
  static Laurent monomial(int power, cld coeff = 1.0L);

  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  bool empty() const { return c_.empty(); }
  cld coeff(int power) const;
  const std::vector<cld>& coeffs() const { return c_; }
  cld operator()(cld y) const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(cld s);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(Laurent a, cld s) { return a *= s; }
  friend Laurent operator*(cld s, Laurent a) { return a *= s; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);

 private:
  void trim();
  int low_ = 0;
  std::vector<cld> c_;
};

/// sin(n a)/sin(a) as a Laurent polynomial in y = e^{ia}; zero for n = 0, odd in n.
Laurent dirichlet_laurent(int n);

/// sin(n a)/sin(a); uses the Chebyshev recurrence in cos(a) near sin(a) = 0.
cplx dirichlet_ratio(int n, cplx alpha);

/// Polynomial in y with ascending coefficients; shift records the power of y cleared.
struct PolyY {
  std::vector<cld> coeffs;
  int shift = 0;
  std::vector<std::string> removed_factors;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  cld operator()(cld y) const;
  /// k-th derivative at y.
  cld derivative(cld y, int k) const;
};

/// Multiplies by y^(-low) and strips zero coefficients at both ends.
PolyY to_poly(const Laurent& l);

/// Divides by a monic-or-not divisor; returns the quotient and the relative remainder size.
PolyY divide(const PolyY& p, const std::vector<cld>& divisor, long double* relative_remainder);

/// extended: long double companion matrix. standard: double throughout.
/// hybrid: double Hessenberg QR on the companion matrix, polished in long double; reverts to extended when a
/// polished root keeps a residual above double rounding.
enum class RootPrecision { extended, standard, hybrid };

/// All roots with multiplicity via a balanced companion matrix, Newton-polished.
/// Clusters that are numerically one multiple root are collapsed onto it.
std::vector<cld> roots(const PolyY& p, RootPrecision precision = RootPrecision::hybrid);

}  // namespace nhskin
