#pragma once

#include <string>

#include "nhskin/types.hpp"

namespace nhskin {

enum class Vectors { none, right, both };

/// Dense eigen-decomposition of a general complex matrix.
///
/// Right vectors have unit norm. Left vectors come from the transposed operator,
/// conjugated and scaled so that left(:,i)^H right(:,i) = 1.
struct EigenSystem {
  Spectrum spectrum;
  Matrix right;
  Matrix left;
  std::vector<double> condition;  // ||l|| ||r|| / |l^H r| per eigenvalue
  std::vector<bool> reliable;     // condition <= kConditionLimit

  static constexpr double kConditionLimit = 1e8;
};

EigenSystem dense_spectrum(const Matrix& m, Vectors want = Vectors::none);

/// Short hash-like digest used in error messages.
std::string matrix_fingerprint(const Matrix& m);

}  // namespace nhskin
