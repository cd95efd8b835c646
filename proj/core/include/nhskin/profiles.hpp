#pragma once

#include <optional>

#include "nhskin/types.hpp"

namespace nhskin {

enum class Normalization { unit_right, biorthogonal };

/// Site-resolved expectation values of one eigenstate.
struct StateProfiles {
  std::vector<double> right_right;            // |psi_r|^2
  std::vector<double> left_left;              // |psi_l|^2
  std::optional<std::vector<cplx>> left_right;  // conj(psi_l) psi_r, sums to 1 when present
  Normalization convention = Normalization::biorthogonal;
  bool near_exceptional = false;  // biorthogonal overlap vanished

  std::size_t sites() const { return right_right.size(); }
};

/// Right/left profiles normalised to unit sum; the mixed profile to unit trace.
StateProfiles expectation_profiles(const Vector& psi_r, const Vector& psi_l,
                                   Normalization convention = Normalization::biorthogonal);

struct LocalizationReport {
  double center_of_mass = 0.0;  // 0-based site units
  double left_edge_fraction = 0.0;
  double right_edge_fraction = 0.0;
  double decay_rate = 0.0;  // 1/site, positive for weight decaying away from the heavier edge
  double fit_r2 = 0.0;
  bool heavier_right = false;

  double heavier_edge_fraction() const {
    return heavier_right ? right_edge_fraction : left_edge_fraction;
  }
};

/// Edge fractions over the outer round(0.1 N) sites; decay fitted on the heavier half.
LocalizationReport localization_report(const std::vector<double>& weights);
LocalizationReport localization_report(const StateProfiles& profile);

/// Sum of weights over the second index for a row-major (dir2, dir1, cell) layout.
std::vector<double> marginal_direction1(const std::vector<double>& weights, int n1, int n2,
                                        int cell = 1);

/// Index of the eigenvalue whose modulus is closest to the median modulus.
std::size_t representative_index(const std::vector<cplx>& values);

}  // namespace nhskin
