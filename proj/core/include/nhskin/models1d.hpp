#pragma once

#include "nhskin/alpha.hpp"
#include "nhskin/chain.hpp"

namespace nhskin {

/// Nearest-neighbour chain: diagonal t_d, H[n][n+1] = t_l, H[n+1][n] = t_r.
struct HNParams {
  cplx t_d{0.0}, t_l{1.0}, t_r{1.0};
  cplx eps_first{0.0}, eps_last{0.0};
  cplx delta_l{0.0}, delta_r{0.0};

  void set_delta(cplx d) { delta_l = delta_r = d; }
};

/// Two-site unit cell with hoppings (t_l1, t_r1) inside and (t_l2, t_r2) between cells.
struct SSHParams {
  int n = 0;
  cplx t_l1{1.0}, t_r1{1.0}, t_l2{1.0}, t_r2{1.0};
  cplx v1{0.0}, v2{0.0};
  cplx delta_l{0.0}, delta_r{0.0};

  void set_delta(cplx d) { delta_l = delta_r = d; }
  cplx half_difference() const { return 0.5 * (v1 - v2); }
};

/// H(k) = t_l e^{ik} + t_r e^{-ik} + u_l e^{2ik} + u_r e^{-2ik}.
struct LongRangeParams {
  cplx t_l{0.0}, t_r{0.0}, u_l{0.0}, u_r{0.0};
};

struct ModelSpectrum {
  Spectrum spectrum;
  AlphaSet alpha;
};

struct BalanceResult {
  bool balanced = false;
  double theta = 0.0;  // phase of the right/left hopping ratio
};

struct ZeroModeVerdict {
  bool predicted = false;
  bool indeterminate = false;
  double margin = 0.0;  // |r_1| - 1
};

Matrix hn_matrix(const HNParams& p, int n);
Matrix ssh_matrix(const SSHParams& p);

/// t_d + 2 sqrt(t_l) sqrt(t_r) cos(alpha) over the solved wavenumbers.
ModelSpectrum hn_spectrum(const HNParams& p, int n);

/// Unnormalised right eigenvector of the symmetric-corner chain without end potentials.
Vector hn_eigenvector(const HNParams& p, cplx alpha, cplx delta, int n);

BalanceResult hn_balanced(const HNParams& p);

/// Full spectrum for even or odd length; odd chains resolve the root sign per wavenumber.
ModelSpectrum ssh_spectrum(const SSHParams& p);

ZeroModeVerdict ssh_zero_mode_predicate(const SSHParams& p);

BalanceResult ssh_balanced(const SSHParams& p);

Spectrum unidirectional_spectrum(cplx t_l, cplx u_l, cplx delta, int n);

ModelSpectrum mixed_longrange_spectrum(cplx t_r, cplx u_l, cplx delta, int n);

cplx bloch_1d(const LongRangeParams& p, double k);

/// Chain of triangles: u_l = t_r, u_r = t_l.
LongRangeParams triangle_chain(cplx t_l, cplx t_r);

/// Parameter families whose Bloch curve encloses no area (family 1, 2 or 3).
LongRangeParams nonwinding_family(int family, double t, double u, double phi, double phi1,
                                  double phi2);

}  // namespace nhskin
