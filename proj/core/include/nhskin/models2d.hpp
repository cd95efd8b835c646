#pragma once

#include <array>

#include "nhskin/models1d.hpp"

namespace nhskin {

/// Amplitudes of one sublattice: intra-chain (t_*) and inter-chain (u_*, v_*).
///
/// Inter-chain block B (to the next chain) uses u_d, v_dl, v_dr;
/// block C (to the previous chain) uses u_u, v_ul, v_ur.
struct LayerHoppings {
  cplx t_d{0.0}, t_l{0.0}, t_r{0.0};
  cplx u_d{0.0}, u_u{0.0};
  cplx v_dl{0.0}, v_dr{0.0}, v_ul{0.0}, v_ur{0.0};
};

enum class StackFamily { hn, ssh };

/// bc1: periodic stacking. bc2: corners delta2 and 1/delta2. open: no wrap. custom: both free.
enum class StackBoundary { bc1, bc2, open, custom };

struct Stacked2DSpec {
  StackFamily family = StackFamily::hn;
  std::array<LayerHoppings, 2> cell{};  // hn uses cell[0] only
  int n1 = 0;
  int n2 = 0;
  cplx delta1{0.0};
  StackBoundary boundary = StackBoundary::bc1;
  cplx delta2{1.0};
  cplx delta2_prime{1.0};

  /// Corner factors actually applied to the stacking blocks.
  cplx corner_upper() const;
  cplx corner_lower() const;
  void validate() const;
};

Stacked2DSpec triangular_spec(cplx t_l, cplx t_r, int n1, int n2, cplx delta1,
                              StackBoundary boundary, cplx delta2 = 1.0);

/// N1 x N1 intra-chain block and the two stacking blocks.
Matrix block_a(const Stacked2DSpec& s);
Matrix block_b(const Stacked2DSpec& s);
Matrix block_c(const Stacked2DSpec& s);

Matrix build_stacked_matrix(const Stacked2DSpec& s);

struct BlochBlock {
  int j = 0;
  cplx phase{1.0};  // omega_j, times delta2^{-1/N2} for bc2
  Matrix h;
};

/// Block-diagonalises the stacking direction; throws for open and custom boundaries.
std::vector<BlochBlock> bc_reduce(const Stacked2DSpec& s);

/// Eigenvector of the full lattice from eigenvector v of the block with the given phase.
Vector lift_block_vector(const Vector& v, cplx phase, int n2);

struct StackedSpectrum {
  Spectrum spectrum;
  std::vector<AlphaSet> per_block;
  std::vector<int> block_of_value;  // block index j for each eigenvalue
};

/// Effective chain amplitudes of block j.
HNParams stacked_hn_block(const Stacked2DSpec& s, cplx phase);
SSHParams stacked_ssh_block(const Stacked2DSpec& s, cplx phase);

StackedSpectrum stacked_hn_spectrum(const Stacked2DSpec& s, int threads = 1);
StackedSpectrum stacked_ssh_spectrum(const Stacked2DSpec& s, int threads = 1);

enum class StackBalance { case1, case2, case3, case4, case5, case6, case7, general_r, unbalanced };
const char* to_string(StackBalance b);

StackBalance stacked_hn_balance(const Stacked2DSpec& s);
StackBalance stacked_ssh_balance(const Stacked2DSpec& s);

struct EnvelopeCurves {
  std::vector<double> t;
  std::vector<cplx> z1, z2, z_plus, z_minus;
  std::vector<cplx> loop;  // closed loop for the retracing cases, sampled at the same grid
};

EnvelopeCurves envelope_curves(const Stacked2DSpec& s, const std::vector<double>& t_grid);

/// Uniform grid on [0, 2 pi] containing every multiple of 2 pi / n2.
std::vector<double> envelope_grid(int n2, int refine = 8);

/// Distance from z to the nearest segment [z_minus(t), z_plus(t)].
double segment_family_distance(const EnvelopeCurves& e, cplx z);

/// Triangular lattice: Bloch reduction for bc1/bc2, dense oracle for other boundaries.
StackedSpectrum triangular_spectrum(const Stacked2DSpec& s, int threads = 1);

/// Three-site cells; intra-cell (t_l, t_r) and inter-cell (s_l, s_r) amplitudes.
struct KagomeParams {
  cplx t_l{1.0}, t_r{1.0}, s_l{1.0}, s_r{1.0};
};

/// Site index (y * n1 + x) * 3 + sublattice.
Matrix kagome_matrix(const KagomeParams& p, int n1, int n2, cplx delta1, cplx delta2,
                     cplx delta2_prime);

/// All sums a_i + b_j of two solved 1D spectra.
Spectrum separable_square_spectrum(const Spectrum& a, const Spectrum& b);

/// a (x) I + I (x) b, with the first factor slow.
Matrix kronecker_sum(const Matrix& a, const Matrix& b);

}  // namespace nhskin
