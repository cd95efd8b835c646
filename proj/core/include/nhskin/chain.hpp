#pragma once

#include <optional>

#include "nhskin/types.hpp"

namespace nhskin {

/// One-band chain with offset-indexed hoppings.
///
/// Entry H[i][i+d] equals hoppings[d][i mod period] for 0-based row i.
/// Wrapped entries of negative offsets land in the upper-right corner and are
/// scaled by delta_r; wrapped entries of positive offsets land in the
/// lower-left corner and are scaled by delta_l.
struct ChainStencil {
  int size = 0;
  std::map<int, std::vector<cplx>> hoppings;
  std::vector<cplx> onsite{cplx{0.0}};
  cplx eps_first{0.0};
  cplx eps_last{0.0};
  cplx delta_l{0.0};
  cplx delta_r{0.0};
  /// Replace the wrapped H[0][N-1] and H[N-1][0] amplitudes before delta scaling.
  std::optional<cplx> corner_upper;
  std::optional<cplx> corner_lower;

  void set_delta(cplx d) { delta_l = delta_r = d; }
  int max_positive() const;
  int max_negative() const;
  cplx hop(int offset, int row) const;
};

Matrix build_chain_matrix(const ChainStencil& s);

/// H[i][i+1] = t_l, H[i+1][i] = t_r, diagonal t_d.
ChainStencil hn_stencil(int n, cplx t_d, cplx t_l, cplx t_r, cplx delta_l, cplx delta_r,
                        cplx eps_first = 0.0, cplx eps_last = 0.0);

/// Even or odd SSH chain; odd chains use the geometric-mean corner amplitudes.
ChainStencil ssh_stencil(int n, cplx t_l1, cplx t_r1, cplx t_l2, cplx t_r2, cplx v1, cplx v2,
                         cplx delta_l, cplx delta_r);

/// Offsets +1 (t_l) and +2 (u_l) only.
ChainStencil unidirectional_stencil(int n, cplx t_l, cplx u_l, cplx delta);

/// Offset +2 (u_l) and offset -1 (t_r).
ChainStencil mixed_stencil(int n, cplx t_r, cplx u_l, cplx delta);

/// Offsets +-1 and +-2 with amplitudes t_l, t_r, u_l, u_r.
ChainStencil longrange_stencil(int n, cplx t_l, cplx t_r, cplx u_l, cplx u_r, cplx delta);

}  // namespace nhskin
