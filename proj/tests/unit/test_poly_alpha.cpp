#include <doctest.h>

#include <algorithm>

#include "nhskin/alpha.hpp"
#include "nhskin/chain.hpp"
#include "nhskin/models1d.hpp"
#include "nhskin/poly.hpp"
#include "support.hpp"

using namespace nhskin;
using nhskin::testing::Draws;

namespace {

/// Ascending coefficients of prod (y - r).
PolyY from_roots(const std::vector<cld>& rs, cld lead = 1.0L) {
  std::vector<cld> c{lead};
  for (const cld& r : rs) {
    std::vector<cld> next(c.size() + 1, cld{0.0L});
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return PolyY{c, 0, {}};
}

/// Greedy nearest pairing distance; both sides have equal size.
long double root_mismatch(std::vector<cld> got, const std::vector<cld>& want) {
  long double worst = 0.0L;
  for (const cld& w : want) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](const cld& a, const cld& b) { return std::abs(a - w) < std::abs(b - w); });
    worst = std::max(worst, std::abs(*it - w));
    got.erase(it);
  }
  return worst;
}

}  // namespace

TEST_CASE("dirichlet laurent form evaluates sin(n a)/sin(a)") {
  Draws d(3);
  for (int n = -6; n <= 9; ++n) {
    const Laurent l = dirichlet_laurent(n);
    for (int k = 0; k < 4; ++k) {
      const double re = d.uniform(0.1, 3.0);
      const double im = d.uniform(-0.5, 0.5);
      const std::complex<long double> a(re, im);
      const cld y = std::exp(cld(0.0L, 1.0L) * a);
      const cld want = std::sin(static_cast<long double>(n) * a) / std::sin(a);
      CHECK(std::abs(l(y) - want) < 1e-12L * std::max(1.0L, std::abs(want)));
    }
  }
  CHECK(dirichlet_laurent(0).empty());
  CHECK(std::abs(dirichlet_ratio(7, cplx{0.0}) - 7.0) < 1e-12);
  CHECK(std::abs(dirichlet_ratio(4, cplx{std::numbers::pi}) + 4.0) < 1e-12);
}

TEST_CASE("laurent products evaluate pointwise") {
  const Laurent a(-2, {1.0L, cld(0.0L, 2.0L), 3.0L});
  const Laurent b(1, {cld(-1.0L, 1.0L), 0.5L});
  const cld y(0.7L, -0.4L);
  CHECK(std::abs((a * b)(y) - a(y) * b(y)) < 1e-15L);
  CHECK(std::abs((a + b)(y) - (a(y) + b(y))) < 1e-15L);
  CHECK(std::abs((a - a)(y)) == 0.0L);
  CHECK((a * b).low() == -1);
}

TEST_CASE("roots recovers simple roots at every precision") {
  Draws d(21);
  std::vector<cld> want;
  for (int k = 0; k < 12; ++k) {
    const cplx z = d.hopping();
    want.emplace_back(z.real(), z.imag());
  }
  const PolyY p = from_roots(want, cld(0.3L, 1.1L));
  for (auto prec : {RootPrecision::extended, RootPrecision::standard, RootPrecision::hybrid}) {
    const auto got = roots(p, prec);
    REQUIRE(got.size() == want.size());
    CHECK(root_mismatch(got, want) < 1e-9L);
  }
}

TEST_CASE("roots collapses multiple roots onto one value") {
  const cld a(0.6L, 0.2L), b(-1.1L, 0.5L), c(0.1L, -0.9L);
  const PolyY p = from_roots({a, a, a, b, b, c});
  for (auto prec : {RootPrecision::extended, RootPrecision::hybrid}) {
    const auto got = roots(p, prec);
    REQUIRE(got.size() == 6u);
    CHECK(std::count(got.begin(), got.end(), got[0]) >= 1);
    CHECK(root_mismatch(got, {a, a, a, b, b, c}) < 1e-12L);
    int exact_a = 0;
    for (const cld& r : got) exact_a += std::abs(r - a) < 1e-14L;
    CHECK(exact_a == 3);
  }
}

TEST_CASE("roots keeps close but distinct roots apart") {
  const cld a(0.5L, 0.0L), b(0.5L + 1e-6L, 0.0L);
  const auto got = roots(from_roots({a, b, cld(2.0L)}));
  CHECK(root_mismatch(got, {a, b, cld(2.0L)}) < 1e-12L);
}

TEST_CASE("roots reports leading zero coefficients as zero roots") {
  const PolyY p{{0.0L, 0.0L, -4.0L, 0.0L, 1.0L}, 0, {}};
  const auto got = roots(p);
  CHECK(root_mismatch(got, {0.0L, 0.0L, 2.0L, -2.0L}) < 1e-15L);
  CHECK_THROWS_AS(roots(PolyY{{1.0L}, 0, {}}), Error);
}

TEST_CASE("polynomial division returns quotient and remainder size") {
  const PolyY p = from_roots({2.0L, cld(0.0L, 1.0L), cld(0.0L, -1.0L)});
  long double rel = 1.0L;
  const PolyY q = divide(p, {-2.0L, 1.0L}, &rel);
  CHECK(rel < 1e-18L);
  REQUIRE(q.degree() == 2);
  CHECK(std::abs(q.coeffs[0] - 1.0L) < 1e-18L);
  CHECK(std::abs(q.coeffs[1]) < 1e-18L);
  divide(p, {-3.0L, 1.0L}, &rel);
  CHECK(rel > 1e-3L);
}

TEST_CASE("open hn wavenumbers are the standing waves") {
  const int n = 11;
  const AlphaEquation eq = HNEquation{n, 1.0, 2.0, 0.0, 0.0, 0.0, 0.0};
  const PolyY p = polynomialize(eq);
  CHECK(p.degree() == expected_degree(eq));
  const AlphaSet a = alpha_from_roots(roots(p), Pairing::reciprocal, n);
  std::vector<long double> cosines;
  for (const cld& c : a.cosines) {
    CHECK(std::abs(c.imag()) < 1e-12L);
    cosines.push_back(c.real());
  }
  std::sort(cosines.begin(), cosines.end());
  for (int j = 1; j <= n; ++j)
    CHECK(std::abs(cosines[static_cast<std::size_t>(n - j)] -
                   std::cos(std::numbers::pi_v<long double> * j / (n + 1))) < 1e-12L);
  CHECK(a.generator == "reciprocal-pairs");
}

TEST_CASE("reciprocal pairing recovers the cosines of constructed roots") {
  Draws d(4);
  std::vector<cld> rs, want;
  for (int k = 0; k < 6; ++k) {
    const cplx z = d.hopping();
    const cld y(z.real(), z.imag());
    rs.push_back(y);
    rs.push_back(1.0L / y);
    want.push_back((y + 1.0L / y) / 2.0L);
  }
  const AlphaSet a = alpha_from_roots(rs, Pairing::reciprocal, 6);
  CHECK(root_mismatch(a.cosines, want) < 1e-15L);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(std::cos(cld(a.values[i].real(), a.values[i].imag())) - a.cosines[i]) < 1e-12L);
  CHECK_THROWS_AS(alpha_from_roots(rs, Pairing::reciprocal, 5), Error);
}

TEST_CASE("triple grouping recovers eigenvalues of constructed cubics") {
  const cld ul(1.0L, 0.5L), tr(0.3L, -0.2L);
  const std::vector<cld> lambdas{cld(1.0L, 0.0L), cld(-0.5L, 0.7L), cld(0.2L, -1.3L)};
  std::vector<cld> rs;
  for (const cld& lam : lambdas) {
    // u_l y^3 - lambda y + t_r = 0
    const auto r = roots(PolyY{{tr, -lam, 0.0L, ul}, 0, {}});
    rs.insert(rs.end(), r.begin(), r.end());
  }
  const AlphaSet a = alpha_from_roots(rs, Pairing::triple, 3, [&](cld y) { return ul * y * y + tr / y; });
  std::vector<cld> got;
  for (const cplx& v : a.class_values) got.emplace_back(v.real(), v.imag());
  CHECK(root_mismatch(got, lambdas) < 1e-12L);
  CHECK(a.max_class_spread < 1e-12);
  CHECK_THROWS_AS(alpha_from_roots(rs, Pairing::triple, 3), Error);
}

TEST_CASE("mixed chain polynomial has degree 3N") {
  for (int n : {4, 7, 12}) {
    const AlphaEquation eq = MixedEquation{n, cplx{0.8, 0.3}, cplx{1.2, -0.4}, cplx{0.5}};
    const PolyY p = polynomialize(eq);
    CHECK(p.degree() == 3 * n);
    CHECK(expected_degree(eq) == 3 * n);
    CHECK(p.removed_factors.size() == 1u);
  }
  CHECK_THROWS_AS(polynomialize(MixedEquation{5, 0.0, 1.0, 0.0}), Error);
}

TEST_CASE("mixed chain with a degenerate zero eigenvalue groups into triples") {
  // Double root of the y-polynomial where u_l y^3 = -t_r; the companion solve splits it.
  const cplx tr{0.4475, -0.2750}, ul{1.0555, 1.4962};
  const int n = 26;
  const ModelSpectrum m = mixed_longrange_spectrum(tr, ul, 0.0, n);
  CHECK(m.spectrum.size() == static_cast<std::size_t>(n));
  CHECK(m.alpha.max_class_spread < 1e-8);
  const auto oracle = nhskin::testing::oracle_values(build_chain_matrix(mixed_stencil(n, tr, ul, 0.0)));
  CHECK(nhskin::testing::relative_mismatch(m.spectrum.values, oracle) < 1e-6);
}
