#include "nhskin/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nhskin {

namespace {

cld to_ld(cplx z) { return cld(z.real(), z.imag()); }
cld sqrt_ld(cplx z) { return std::sqrt(to_ld(z)); }

Laurent D(int n) { return dirichlet_laurent(n); }

void require_nonzero(cplx v, const char* name) {
  if (v == cplx{0.0}) throw Error(std::string("polynomialize: parameter ") + name + " must be nonzero");
}

PolyY hn_poly(const HNEquation& e) {
  require_nonzero(e.t_l, "t_l");
  require_nonzero(e.t_r, "t_r");
  const int n = e.n;
  const cld tl = to_ld(e.t_l), tr = to_ld(e.t_r);
  const cld g = std::sqrt(tr) * std::sqrt(tl);
  const cld q = std::sqrt(tr) / std::sqrt(tl);
  const cld e1 = to_ld(e.eps_first), en = to_ld(e.eps_last);
  const cld dl = to_ld(e.delta_l), dr = to_ld(e.delta_r);
  Laurent eq = D(n + 1) * cld{-1.0L};
  eq += D(n) * ((e1 + en) / g);
  eq += D(n - 1) * (dr * dl - e1 * en / (tl * tr));
  eq += Laurent::constant(dl * std::pow(q, -n) + dr * std::pow(q, n));
  return to_poly(eq);
}

PolyY ssh_even_poly(const SSHEquation& e) {
  const int m = e.n / 2;
  const cld sl1 = sqrt_ld(e.t_l1), sr1 = sqrt_ld(e.t_r1), sl2 = sqrt_ld(e.t_l2), sr2 = sqrt_ld(e.t_r2);
  const cld r1 = sl2 * sr2 / (sl1 * sr1);
  const cld q = sr1 * sr2 / (sl1 * sl2);
  const cld dl = to_ld(e.delta_l), dr = to_ld(e.delta_r);
  Laurent eq = D(m + 1) * cld{-1.0L};
  eq += D(m - 1) * (dl * dr);
  eq += D(m) * ((dl * dr - cld{1.0L}) * r1);
  eq += Laurent::constant(dr * std::pow(q, m) + dl * std::pow(q, -m));
  return to_poly(eq);
}

PolyY ssh_odd_poly(const SSHEquation& e) {
  const int l = (e.n - 1) / 2;
  const cld sl1 = sqrt_ld(e.t_l1), sr1 = sqrt_ld(e.t_r1), sl2 = sqrt_ld(e.t_l2), sr2 = sqrt_ld(e.t_r2);
  const cld q = sr1 * sr2 / (sl1 * sl2);
  const cld x = sr1 * sr2 * std::pow(q, l);
  const cld yv = sl1 * sl2 * std::pow(q, -l);
  const cld g = sl1 * sl2 * sr1 * sr2;
  const cld dl = to_ld(e.delta_l), dr = to_ld(e.delta_r);
  // lambda^2 = t_l1 t_r1 + t_l2 t_r2 + g (y + 1/y)
  Laurent lam2(-1, {g, to_ld(e.t_l1) * to_ld(e.t_r1) + to_ld(e.t_l2) * to_ld(e.t_r2), g});
  Laurent dd = D(l + 1) - D(l) * (dl * dr);
  Laurent eq = lam2 * (dd * dd);
  const cld rhs = dr * x + dl * yv;
  eq -= Laurent::constant(rhs * rhs);
  return to_poly(eq);
}

PolyY mixed_poly(const MixedEquation& e) {
  require_nonzero(e.u_l, "u_l");
  require_nonzero(e.t_r, "t_r");
  const int n = e.n;
  const cld tt = to_ld(e.t_r) / to_ld(e.u_l);
  const cld d = to_ld(e.delta);
  const Laurent r = Laurent::monomial(-3, tt);
  const Laurent one = Laurent::constant(1.0L);
  const Laurent two = Laurent::constant(2.0L);
  std::vector<Laurent> p{Laurent{}, Laurent::constant(-1.0L)};
  for (int k = 2; k <= n; ++k) p.push_back(p[static_cast<std::size_t>(k - 1)] * cld{-1.0L} + r * p[static_cast<std::size_t>(k - 2)]);
  const Laurent& pn = p[static_cast<std::size_t>(n)];
  const Laurent& pn1 = p[static_cast<std::size_t>(n - 1)];
  auto power = [](const Laurent& a, int k) {
    Laurent o = Laurent::constant(1.0L);
    for (int i = 0; i < k; ++i) o = o * a;
    return o;
  };
  const Laurent mr = r * cld{-1.0L};
  const Laurent mr_n = power(mr, n);
  const Laurent mr_n1 = mr_n * mr;
  auto y = [](int k) { return Laurent::monomial(k); };

  Laurent t1 = (two + r) * pn - r * pn1 * cld{2.0L} + mr_n1;
  Laurent eq = y(3 * n + 3) * t1 * cld{-1.0L};
  Laurent t2 = two + pn * cld{2.0L} + r * (r - one) * pn1 * cld{2.0L} + (two - r) * y(2 * n) * mr_n;
  eq += y(2 * n + 3) * t2 * d;
  Laurent t3 = y(-2 * n) * (two - r) * cld{-1.0L} + r * pn * cld{2.0L} +
               r * (one - r) * pn1 * cld{2.0L} - mr_n * cld{2.0L};
  eq += y(3 * n + 3) * t3 * (d * d);
  Laurent t4 = r * (one + pn1 * cld{2.0L} + pn);
  eq -= y(2 * n + 3) * t4 * (d * d * d);

  PolyY full = to_poly(eq);
  long double rel = 0.0L;
  PolyY reduced = divide(full, {-tt, 0.0L, 0.0L, 2.0L}, &rel);
  if (rel > 1e-9L) {
    std::ostringstream os;
    os << "polynomialize: mixed equation not divisible by (2y^3 - t_r/u_l), relative remainder "
       << static_cast<double>(rel);
    throw Error(os.str());
  }
  reduced.removed_factors.push_back("(t_r/u_l) - 2y^3");
  return reduced;
}

}  // namespace

int expected_degree(const AlphaEquation& eq) {
  return std::visit(
      [](const auto& e) -> int {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, MixedEquation>) return 3 * e.n;
        else return 2 * (std::is_same_v<T, SSHEquation> && e.n % 2 == 0 ? e.n / 2 : e.n);
      },
      eq);
}

PolyY polynomialize(const AlphaEquation& eq) {
  PolyY p = std::visit(
      [](const auto& e) -> PolyY {
        using T = std::decay_t<decltype(e)>;
        if (e.n < 1) throw Error("polynomialize: chain length must be positive");
        if constexpr (std::is_same_v<T, HNEquation>) {
          return hn_poly(e);
        } else if constexpr (std::is_same_v<T, SSHEquation>) {
          require_nonzero(e.t_l1, "t_l1");
          require_nonzero(e.t_r1, "t_r1");
          require_nonzero(e.t_l2, "t_l2");
          require_nonzero(e.t_r2, "t_r2");
          return e.n % 2 == 0 ? ssh_even_poly(e) : ssh_odd_poly(e);
        } else {
          return mixed_poly(e);
        }
      },
      eq);
  const int want = expected_degree(eq);
  if (p.degree() != want) {
    std::ostringstream os;
    os << "polynomialize: degenerate leading coefficient, degree " << p.degree() << " instead of "
       << want;
    if (!p.coeffs.empty()) {
      const cld lead = p.coeffs.back();
      os << " (leading coefficient " << static_cast<double>(lead.real()) << "+"
         << static_cast<double>(lead.imag()) << "i)";
    }
    throw Error(os.str());
  }
  return p;
}

AlphaSet alpha_from_roots(const std::vector<cld>& roots, Pairing pairing, int expected_count,
                          const std::function<cld(cld)>& lambda_of_y) {
  AlphaSet a;
  const std::size_t n = roots.size();
  if (pairing == Pairing::reciprocal) {
    a.generator = "reciprocal-pairs";
    struct Cand {
      long double d;
      std::size_t i, j;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        cands.push_back({std::abs(roots[i] * roots[j] - cld{1.0L}), i, j});
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& x, const Cand& y) { return x.d < y.d; });
    std::vector<bool> used(n, false);
    for (const auto& c : cands) {
      if (used[c.i] || used[c.j]) continue;
      used[c.i] = used[c.j] = true;
      const cld yi = roots[c.i], yj = roots[c.j];
      const cld cos_v = ((yi + cld{1.0L} / yi) + (yj + cld{1.0L} / yj)) / cld{4.0L};
      const cld rep = std::abs(yi) <= std::abs(yj) ? yi : yj;
      a.cosines.push_back(cos_v);
      a.y.push_back(rep);
      const cld alpha = std::acos(cos_v);
      a.values.emplace_back(static_cast<double>(alpha.real()), static_cast<double>(alpha.imag()));
    }
  } else {
    a.generator = "root-triples";
    if (!lambda_of_y) throw Error("alpha_from_roots: triple grouping needs an eigenvalue map");
    std::vector<cld> lam(n);
    for (std::size_t i = 0; i < n; ++i) lam[i] = lambda_of_y(roots[i]);
    // Roots with equal eigenvalue cluster together; a degenerate eigenvalue of multiplicity m
    // yields a cluster of 3m roots, dealt round-robin so repeated roots land in distinct classes.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::abs(lam[i] - lam[j]) <=
            kTripleSpreadLimit * std::max({1.0L, std::abs(lam[i]), std::abs(lam[j])}))
          parent[find(i)] = find(j);
    std::vector<std::vector<std::size_t>> clusters(n);
    for (std::size_t i = 0; i < n; ++i) clusters[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> groups;
    for (auto& c : clusters) {
      if (c.empty()) continue;
      if (c.size() % 3 != 0) {
        std::ostringstream os;
        os << "alpha_from_roots: root triple grouping failed, found a class of size " << c.size();
        throw Error(os.str());
      }
      std::stable_sort(c.begin(), c.end(), [&](std::size_t x, std::size_t y) {
        const long double ax = std::arg(roots[x]), ay = std::arg(roots[y]);
        return ax != ay ? ax < ay : std::abs(roots[x]) < std::abs(roots[y]);
      });
      const std::size_t m = c.size() / 3;
      for (std::size_t k = 0; k < m; ++k) groups.push_back({c[k], c[k + m], c[k + 2 * m]});
    }
    for (const auto& g : groups) {
      cld mean = 0.0L;
      for (auto i : g) mean += lam[i];
      mean /= 3.0L;
      long double spread = 0.0L;
      for (auto i : g)
        for (auto j : g) spread = std::max(spread, std::abs(lam[i] - lam[j]));
      a.max_class_spread = std::max(a.max_class_spread, static_cast<double>(spread));
      const cld y0 = roots[g.front()];
      const cld alpha = cld(0.0L, -1.0L) * std::log(y0);
      a.values.emplace_back(static_cast<double>(alpha.real()), static_cast<double>(alpha.imag()));
      a.y.push_back(y0);
      a.cosines.push_back(std::cos(alpha));
      a.class_values.emplace_back(static_cast<double>(mean.real()), static_cast<double>(mean.imag()));
    }
    if (a.max_class_spread > kTripleSpreadLimit) {
      std::ostringstream os;
      os << "alpha_from_roots: eigenvalue spread " << a.max_class_spread
         << " within a root triple exceeds " << kTripleSpreadLimit;
      throw Error(os.str());
    }
  }
  if (static_cast<int>(a.values.size()) != expected_count) {
    std::ostringstream os;
    os << "alpha_from_roots: " << n << " roots reduced to " << a.values.size()
       << " classes, expected " << expected_count;
    throw Error(os.str());
  }
  a.multiplicity.assign(a.values.size(), 0);
  for (std::size_t i = 0; i < a.values.size(); ++i)
    for (std::size_t j = 0; j < a.values.size(); ++j)
      if ((pairing == Pairing::reciprocal ? std::abs(a.cosines[i] - a.cosines[j])
                                          : std::abs(a.y[i] - a.y[j])) <= 1e-9L)
        ++a.multiplicity[i];
  return a;
}

}  // namespace nhskin
