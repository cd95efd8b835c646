#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nhskin {

using cplx = std::complex<double>;
using cld = std::complex<long double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Provenance { analytic, oracle };

const char* to_string(Provenance p);

/// Multiset of eigenvalues. `fallback` marks an analytic request answered by the oracle.
struct Spectrum {
  std::vector<cplx> values;
  Provenance provenance = Provenance::analytic;
  std::map<std::string, cplx> params;
  bool fallback = false;
  std::string note;

  std::size_t size() const { return values.size(); }
};

}  // namespace nhskin
