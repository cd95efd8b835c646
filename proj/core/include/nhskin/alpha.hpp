#pragma once

#include <functional>
#include <variant>

#include "nhskin/poly.hpp"

namespace nhskin {

/// Nearest-neighbour chain with end potentials and asymmetric corners.
struct HNEquation {
  int n = 0;
  cplx t_l{1.0}, t_r{1.0};
  cplx eps_first{0.0}, eps_last{0.0};
  cplx delta_l{0.0}, delta_r{0.0};
};

/// Two-site unit cell; parity of n selects the even or odd boundary equation.
struct SSHEquation {
  int n = 0;
  cplx t_l1{1.0}, t_r1{1.0}, t_l2{1.0}, t_r2{1.0};
  cplx delta_l{0.0}, delta_r{0.0};
};

/// Offset +2 amplitude u_l and offset -1 amplitude t_r.
struct MixedEquation {
  int n = 0;
  cplx t_r{1.0}, u_l{1.0};
  cplx delta{0.0};
};

using AlphaEquation = std::variant<HNEquation, SSHEquation, MixedEquation>;

/// Polynomial in y = e^{i alpha} whose roots encode the boundary condition.
///
/// Reciprocal-symmetric for the nearest-neighbour chains (degree 2 x eigenvalue count),
/// degree 3N for the mixed chain after the spurious cubic factor is divided out.
PolyY polynomialize(const AlphaEquation& eq);

/// Number of roots polynomialize() must produce for a well-posed equation.
int expected_degree(const AlphaEquation& eq);

enum class Pairing { reciprocal, triple };

struct AlphaSet {
  std::vector<cplx> values;       // shifted wavenumbers, one per eigenvalue class
  std::vector<cld> cosines;       // cos of each value
  std::vector<cld> y;             // representative root per value
  std::vector<int> multiplicity;  // count of values within 1e-9 of each entry
  std::vector<cplx> class_values; // triple rule: mean eigenvalue of each class
  double max_class_spread = 0.0;  // triple rule: largest intra-class eigenvalue spread
  cplx shift{0.0};                // unshifted wavenumber = value + shift
  std::string generator;

  std::size_t size() const { return values.size(); }
};

/// Reduces polynomial roots to shifted wavenumbers.
///
/// reciprocal: (y, 1/y) pairs share one cosine; pairs are chosen greedily by |y_i y_j - 1|.
/// triple: roots with equal eigenvalue under `lambda_of_y` are grouped in threes.
AlphaSet alpha_from_roots(const std::vector<cld>& roots, Pairing pairing, int expected_count,
                          const std::function<cld(cld)>& lambda_of_y = {});

/// Spread tolerance above which triple grouping is rejected.
inline constexpr double kTripleSpreadLimit = 1e-6;

}  // namespace nhskin
