#include "nhskin/oracle.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <limits>

#include "nhskin/matching.hpp"

namespace nhskin {

namespace {

struct RawEig {
  std::vector<cplx> values;
  Matrix vectors;
};

RawEig zgeev(Matrix a, bool right) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  RawEig out;
  out.values.resize(static_cast<std::size_t>(n));
  if (right) out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!std::isfinite(a.data()[i].real()) || !std::isfinite(a.data()[i].imag()))
      throw Error("dense_spectrum: non-finite entry in matrix " + matrix_fingerprint(a));
  auto* ap = reinterpret_cast<lapack_complex_double*>(a.data());
  auto* wp = reinterpret_cast<lapack_complex_double*>(out.values.data());
  auto* vp = right ? reinterpret_cast<lapack_complex_double*>(out.vectors.data()) : nullptr;
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', right ? 'V' : 'N', n, ap, n, wp, nullptr, 1, vp, n);
  if (info != 0)
    throw Error("dense_spectrum: eigensolver did not converge (info=" + std::to_string(info) +
                ") for matrix " + matrix_fingerprint(a));
  return out;
}

}  // namespace

std::string matrix_fingerprint(const Matrix& m) {
  // FNV-1a over the raw bytes plus the Frobenius norm.
  std::uint64_t h = 1469598103934665603ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(m.data());
  for (std::size_t i = 0; i < static_cast<std::size_t>(m.size()) * sizeof(cplx); ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%ldx%ld fro=%.6e fnv=%016llx]", static_cast<long>(m.rows()),
                static_cast<long>(m.cols()), m.norm(), static_cast<unsigned long long>(h));
  return buf;
}

EigenSystem dense_spectrum(const Matrix& m, Vectors want) {
  if (m.rows() != m.cols()) throw Error("dense_spectrum: matrix must be square");
  EigenSystem es;
  es.spectrum.provenance = Provenance::oracle;
  if (m.rows() == 0) return es;

  RawEig r = zgeev(m, want != Vectors::none);
  es.spectrum.values = r.values;
  if (want == Vectors::none) return es;

  const Eigen::Index n = m.rows();
  es.right = r.vectors;
  for (Eigen::Index i = 0; i < n; ++i) es.right.col(i).normalize();
  es.condition.assign(static_cast<std::size_t>(n), 1.0);
  es.reliable.assign(static_cast<std::size_t>(n), true);
  if (want == Vectors::right) return es;

  RawEig t = zgeev(m.transpose(), true);
  const MatchResult match = match_spectra(r.values, t.values);
  es.left.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector l = t.vectors.col(match.assignment[static_cast<std::size_t>(i)]).conjugate();
    const cplx overlap = l.dot(es.right.col(i));  // l^H r
    const double lr = l.norm() * es.right.col(i).norm();
    double kappa = std::abs(overlap) > 0.0 ? lr / std::abs(overlap)
                                           : std::numeric_limits<double>::infinity();
    if (std::abs(overlap) > 0.0) l /= std::conj(overlap);
    es.left.col(i) = l;
    es.condition[static_cast<std::size_t>(i)] = kappa;
    es.reliable[static_cast<std::size_t>(i)] = kappa <= EigenSystem::kConditionLimit;
  }
  return es;
}

}  // namespace nhskin
