#include <doctest.h>

#include "nhskin/models1d.hpp"
#include "nhskin/sensitivity.hpp"
#include "support.hpp"

using namespace nhskin;
using nhskin::testing::Draws;

namespace {

SpectrumFamily hn_family(cplx t_l, cplx t_r) {
  return [=](int n, cplx delta) {
    HNParams p{0.0, t_l, t_r};
    p.set_delta(delta);
    return hn_spectrum(p, n).spectrum;
  };
}

/// Hausdorff distance by the definition, with no shared code.
double brute_hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double h = 0.0;
  for (const auto& x : a) {
    double m = 1e300;
    for (const auto& y : b) m = std::min(m, std::abs(x - y));
    h = std::max(h, m);
  }
  for (const auto& y : b) {
    double m = 1e300;
    for (const auto& x : a) m = std::min(m, std::abs(x - y));
    h = std::max(h, m);
  }
  return h;
}

}  // namespace

TEST_CASE("delta grid includes both ends") {
  const auto g = delta_grid(0.0, 1.0, 0.01);
  CHECK(g.size() == 101u);
  CHECK(g.back().real() == doctest::Approx(1.0));
  CHECK(delta_grid(0.0, 1.0, 0.1).size() == 11u);
  CHECK_THROWS_AS(delta_grid(0.0, 1.0, 0.0), Error);
}

TEST_CASE("hausdorff is a pseudometric") {
  Draws d(12);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> a(static_cast<std::size_t>(d.integer(1, 8)));
    std::vector<cplx> b(static_cast<std::size_t>(d.integer(1, 8)));
    std::vector<cplx> c(static_cast<std::size_t>(d.integer(1, 8)));
    for (auto* v : {&a, &b, &c})
      for (auto& z : *v) z = d.onsite();
    CHECK(hausdorff(a, b) == doctest::Approx(brute_hausdorff(a, b)));
    CHECK(hausdorff(a, b) == hausdorff(b, a));
    CHECK(hausdorff(a, a) == 0.0);
    CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-15);
  }
}

TEST_CASE("without_smallest drops values of least modulus") {
  const auto v = without_smallest({3.0, cplx{0.0, 0.1}, -1.0, 0.5}, 2);
  REQUIRE(v.size() == 2u);
  CHECK(std::find(v.begin(), v.end(), cplx{3.0}) != v.end());
  CHECK(std::find(v.begin(), v.end(), cplx{-1.0}) != v.end());
}

TEST_CASE("exponent fit recovers a synthetic decay rate") {
  // S(delta) = {delta e^{xi N}}: the spectrum moves by target at delta* = target e^{-xi N}.
  const double xi = 0.35;
  const SpectrumFamily family = [xi](int n, cplx delta) {
    Spectrum s;
    s.values = {delta * std::exp(xi * n)};
    return s;
  };
  ExponentOptions opt;
  opt.target = 0.5;
  opt.sizes = {8, 12, 16, 20};
  const ExponentResult r = sensitivity_exponent(family, opt);
  CHECK(r.xi == doctest::Approx(xi).epsilon(1e-8));
  CHECK(r.r2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.fitted == 4);
  CHECK(r.exponential);
  for (const auto& p : r.points) CHECK(p.delta == doctest::Approx(0.5 * std::exp(-xi * p.n)).epsilon(1e-9));
  opt.sizes = {8, 12, 16};
  CHECK_THROWS_AS(sensitivity_exponent(family, opt), Error);
}

TEST_CASE("critical delta agrees with bisection over oracle spectra") {
  const cplx t_l = 1.0, t_r = 2.0;
  for (int n : {10, 14}) {
    const CriticalDelta c = critical_delta(hn_family(t_l, t_r), n, 0.5);
    REQUIRE(c.reached);
    auto moved = [&](double delta) {
      HNParams p{0.0, t_l, t_r};
      const auto base = nhskin::testing::oracle_values(hn_matrix(p, n));
      p.set_delta(delta);
      return brute_hausdorff(base, nhskin::testing::oracle_values(hn_matrix(p, n))) >= 0.5;
    };
    double lo = 1e-12, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = std::sqrt(lo * hi);
      (moved(mid) ? hi : lo) = mid;
    }
    CHECK(c.delta == doctest::Approx(hi).epsilon(1e-6));
  }
}

TEST_CASE("unbalanced hn is exponentially sensitive and balanced hn is not") {
  ExponentOptions opt;
  opt.target = 0.5;
  opt.sizes = {10, 14, 18, 22};
  const ExponentResult unbalanced = sensitivity_exponent(hn_family(1.0, 2.0), opt);
  CHECK(unbalanced.exponential);
  CHECK(unbalanced.xi > kMinExponent);
  CHECK(unbalanced.r2 >= kMinR2);
  const ExponentResult balanced = sensitivity_exponent(hn_family(1.0, std::polar(1.0, 0.7)), opt);
  CHECK_FALSE(balanced.exponential);
}

TEST_CASE("screen separates unbalanced and balanced hn") {
  const auto at = [](cplx t_r) {
    return [t_r](cplx delta) {
      HNParams p{0.0, 1.0, t_r};
      p.set_delta(delta);
      return hn_spectrum(p, 30).spectrum;
    };
  };
  const SensitivityScreen u = classify_sensitivity(at(2.0));
  CHECK(u.exponential);
  CHECK(u.ratio > kDefaultScreenRatio);
  const SensitivityScreen b = classify_sensitivity(at(std::polar(1.0, 0.4)));
  CHECK_FALSE(b.exponential);
  CHECK(b.first_step > 0.0);
}

TEST_CASE("delta sweep preserves grid order across threads") {
  const auto at = [](cplx delta) {
    Spectrum s;
    s.values = {delta};
    return s;
  };
  const auto grid = delta_grid(0.0, 1.0, 0.125);
  const auto serial = delta_sweep(at, grid, 1);
  const auto parallel = delta_sweep(at, grid, 3);
  REQUIRE(serial.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(serial[i].values[0] == grid[i]);
    CHECK(parallel[i].values[0] == grid[i]);
  }
}
