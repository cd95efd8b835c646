#include "nhskin/chain.hpp"

#include <algorithm>
#include <string>

namespace nhskin {

const char* to_string(Provenance p) { return p == Provenance::analytic ? "analytic" : "oracle"; }

int ChainStencil::max_positive() const {
  int m = 0;
  for (const auto& [d, amps] : hoppings)
    if (d > 0) m = std::max(m, d);
  return m;
}

int ChainStencil::max_negative() const {
  int m = 0;
  for (const auto& [d, amps] : hoppings)
    if (d < 0) m = std::max(m, -d);
  return m;
}

cplx ChainStencil::hop(int offset, int row) const {
  auto it = hoppings.find(offset);
  if (it == hoppings.end() || it->second.empty()) return 0.0;
  const auto& a = it->second;
  return a[static_cast<std::size_t>(row) % a.size()];
}

Matrix build_chain_matrix(const ChainStencil& s) {
  const int n = s.size;
  if (n <= 0) throw Error("chain size must be positive, got " + std::to_string(n));
  if (s.onsite.empty()) throw Error("onsite pattern must not be empty");
  for (const auto& [d, amps] : s.hoppings) {
    if (d == 0) throw Error("offset 0 belongs to the onsite pattern, not the hoppings");
    if (amps.empty()) throw Error("empty amplitude list for offset " + std::to_string(d));
  }
  const bool wrapped = s.delta_l != cplx{0.0} || s.delta_r != cplx{0.0};
  const int reach = s.max_positive() + s.max_negative();
  if (s.max_positive() >= n || s.max_negative() >= n || (wrapped && reach >= n)) {
    throw Error("hopping range (+" + std::to_string(s.max_positive()) + ", -" +
                std::to_string(s.max_negative()) + ") too long for N=" + std::to_string(n) +
                ": band and corner entries would overlap");
  }

  Matrix h = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) h(i, i) = s.onsite[static_cast<std::size_t>(i) % s.onsite.size()];
  h(0, 0) += s.eps_first;
  h(n - 1, n - 1) += s.eps_last;

  for (const auto& [d, amps] : s.hoppings) {
    for (int i = 0; i < n; ++i) {
      const int j = i + d;
      const cplx a = s.hop(d, i);
      if (j >= 0 && j < n) {
        h(i, j) += a;
      } else if (j < 0) {
        h(i, j + n) += s.delta_r * a;
      } else {
        h(i, j - n) += s.delta_l * a;
      }
    }
  }
  if (s.corner_upper && n > 1) h(0, n - 1) = s.delta_r * *s.corner_upper;
  if (s.corner_lower && n > 1) h(n - 1, 0) = s.delta_l * *s.corner_lower;
  return h;
}

ChainStencil hn_stencil(int n, cplx t_d, cplx t_l, cplx t_r, cplx delta_l, cplx delta_r,
                        cplx eps_first, cplx eps_last) {
  ChainStencil s;
  s.size = n;
  s.onsite = {t_d};
  s.hoppings[1] = {t_l};
  s.hoppings[-1] = {t_r};
  s.delta_l = delta_l;
  s.delta_r = delta_r;
  s.eps_first = eps_first;
  s.eps_last = eps_last;
  return s;
}

ChainStencil ssh_stencil(int n, cplx t_l1, cplx t_r1, cplx t_l2, cplx t_r2, cplx v1, cplx v2,
                         cplx delta_l, cplx delta_r) {
  ChainStencil s;
  s.size = n;
  s.onsite = {v1, v2};
  s.hoppings[1] = {t_l1, t_l2};
  s.hoppings[-1] = {t_r2, t_r1};
  s.delta_l = delta_l;
  s.delta_r = delta_r;
  if (n % 2 == 1) {
    s.corner_upper = std::sqrt(t_r1) * std::sqrt(t_r2);
    s.corner_lower = std::sqrt(t_l1) * std::sqrt(t_l2);
  }
  return s;
}

ChainStencil unidirectional_stencil(int n, cplx t_l, cplx u_l, cplx delta) {
  ChainStencil s;
  s.size = n;
  s.hoppings[1] = {t_l};
  s.hoppings[2] = {u_l};
  s.set_delta(delta);
  return s;
}

ChainStencil mixed_stencil(int n, cplx t_r, cplx u_l, cplx delta) {
  ChainStencil s;
  s.size = n;
  s.hoppings[2] = {u_l};
  s.hoppings[-1] = {t_r};
  s.set_delta(delta);
  return s;
}

ChainStencil longrange_stencil(int n, cplx t_l, cplx t_r, cplx u_l, cplx u_r, cplx delta) {
  ChainStencil s;
  s.size = n;
  s.hoppings[1] = {t_l};
  s.hoppings[-1] = {t_r};
  s.hoppings[2] = {u_l};
  s.hoppings[-2] = {u_r};
  s.set_delta(delta);
  return s;
}

}  // namespace nhskin
