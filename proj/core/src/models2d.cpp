#include "nhskin/models2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "nhskin/oracle.hpp"

namespace nhskin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEqualTol = 1e-10;

bool same(cplx a, cplx b) {
  return std::abs(a - b) <= kEqualTol * std::max({1.0, std::abs(a), std::abs(b)});
}
bool zero(cplx a) { return std::abs(a) <= kEqualTol; }

cplx omega(int j, int n2) { return std::polar(1.0, 2.0 * kPi * j / n2); }

/// Runs f(0..n-1) on up to `threads` workers; results are written by index.
template <class F>
void for_each_block(int n, int threads, F&& f) {
  threads = std::clamp(threads, 1, std::max(n, 1));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += threads) f(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Matrix chain_block(const Stacked2DSpec& s, cplx d1, cplx l1, cplx r1, cplx d2, cplx l2, cplx r2) {
  if (s.family == StackFamily::hn)
    return build_chain_matrix(hn_stencil(s.n1, d1, l1, r1, s.delta1, s.delta1));
  return build_chain_matrix(ssh_stencil(s.n1, l1, r1, l2, r2, d1, d2, s.delta1, s.delta1));
}

std::vector<cplx> block_phases(const Stacked2DSpec& s) {
  if (s.boundary == StackBoundary::open || s.boundary == StackBoundary::custom)
    throw Error("bc_reduce: no Bloch reduction exists for this boundary");
  // Similarity by diag(rho^a) maps the bc2 corners to periodic ones with rho = delta2^{-1/N2}.
  const cplx rho =
      s.boundary == StackBoundary::bc2 ? std::exp(-std::log(s.delta2) / double(s.n2)) : 1.0;
  std::vector<cplx> out;
  for (int j = 0; j < s.n2; ++j) out.push_back(omega(j, s.n2) * rho);
  return out;
}

StackedSpectrum oracle_stack(const Stacked2DSpec& s, const std::string& why) {
  StackedSpectrum out;
  out.spectrum = dense_spectrum(build_stacked_matrix(s)).spectrum;
  out.spectrum.fallback = true;
  out.spectrum.note = why;
  return out;
}

template <class Solve>
StackedSpectrum assemble(const Stacked2DSpec& s, int threads, Solve&& solve) {
  const std::vector<cplx> phases = block_phases(s);
  std::vector<ModelSpectrum> parts(phases.size());
  for_each_block(static_cast<int>(phases.size()), threads,
                 [&](int j) { parts[static_cast<std::size_t>(j)] = solve(phases[static_cast<std::size_t>(j)]); });
  StackedSpectrum out;
  std::vector<std::string> notes;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    for (const cplx& v : parts[j].spectrum.values) {
      out.spectrum.values.push_back(v);
      out.block_of_value.push_back(static_cast<int>(j));
    }
    out.per_block.push_back(std::move(parts[j].alpha));
    if (parts[j].spectrum.fallback) {
      out.spectrum.fallback = true;
      notes.push_back("block " + std::to_string(j) + ": " + parts[j].spectrum.note);
    }
  }
  for (const auto& n : notes) out.spectrum.note += (out.spectrum.note.empty() ? "" : "; ") + n;
  out.spectrum.params = {{"delta1", s.delta1}, {"delta2", s.corner_upper()},
                         {"delta2_prime", s.corner_lower()}};
  return out;
}

cplx mix(cplx t, cplx forward, cplx backward, cplx phase) {
  return t + phase * forward + backward / phase;
}

}  // namespace

cplx Stacked2DSpec::corner_upper() const {
  switch (boundary) {
    case StackBoundary::bc1: return 1.0;
    case StackBoundary::open: return 0.0;
    default: return delta2;
  }
}

cplx Stacked2DSpec::corner_lower() const {
  switch (boundary) {
    case StackBoundary::bc1: return 1.0;
    case StackBoundary::open: return 0.0;
    case StackBoundary::bc2: return 1.0 / delta2;
    default: return delta2_prime;
  }
}

void Stacked2DSpec::validate() const {
  if (n1 < 2 || n2 < 1) throw Error("stacked lattice: need N1 >= 2 and N2 >= 1");
  if (boundary == StackBoundary::bc2 && delta2 == cplx{0.0})
    throw Error("stacked lattice: bc2 requires delta2 != 0");
}

Stacked2DSpec triangular_spec(cplx t_l, cplx t_r, int n1, int n2, cplx delta1,
                              StackBoundary boundary, cplx delta2) {
  Stacked2DSpec s;
  s.family = StackFamily::hn;
  s.n1 = n1;
  s.n2 = n2;
  s.delta1 = delta1;
  s.boundary = boundary;
  s.delta2 = delta2;
  LayerHoppings& h = s.cell[0];
  h.t_l = t_l;
  h.t_r = t_r;
  h.u_d = t_r;
  h.v_dr = t_l;
  h.u_u = t_l;
  h.v_ul = t_r;
  return s;
}

Matrix block_a(const Stacked2DSpec& s) {
  const auto& a = s.cell[0];
  const auto& b = s.cell[1];
  return chain_block(s, a.t_d, a.t_l, a.t_r, b.t_d, b.t_l, b.t_r);
}

Matrix block_b(const Stacked2DSpec& s) {
  const auto& a = s.cell[0];
  const auto& b = s.cell[1];
  return chain_block(s, a.u_d, a.v_dl, a.v_dr, b.u_d, b.v_dl, b.v_dr);
}

Matrix block_c(const Stacked2DSpec& s) {
  const auto& a = s.cell[0];
  const auto& b = s.cell[1];
  return chain_block(s, a.u_u, a.v_ul, a.v_ur, b.u_u, b.v_ul, b.v_ur);
}

Matrix build_stacked_matrix(const Stacked2DSpec& s) {
  s.validate();
  const int n1 = s.n1, n2 = s.n2;
  const Matrix a = block_a(s), b = block_b(s), c = block_c(s);
  Matrix h = Matrix::Zero(n1 * n2, n1 * n2);
  for (int l = 0; l < n2; ++l) {
    h.block(l * n1, l * n1, n1, n1) += a;
    if (l + 1 < n2) {
      h.block(l * n1, (l + 1) * n1, n1, n1) += b;
      h.block((l + 1) * n1, l * n1, n1, n1) += c;
    }
  }
  const int last = (n2 - 1) * n1;
  h.block(0, last, n1, n1) += s.corner_upper() * c;
  h.block(last, 0, n1, n1) += s.corner_lower() * b;
  return h;
}

std::vector<BlochBlock> bc_reduce(const Stacked2DSpec& s) {
  s.validate();
  const Matrix a = block_a(s), b = block_b(s), c = block_c(s);
  std::vector<BlochBlock> out;
  int j = 0;
  for (const cplx& ph : block_phases(s)) out.push_back({j++, ph, a + ph * b + c / ph});
  return out;
}

Vector lift_block_vector(const Vector& v, cplx phase, int n2) {
  const Eigen::Index n1 = v.size();
  Vector out(n1 * n2);
  cplx f{1.0};
  for (int l = 0; l < n2; ++l, f *= phase) out.segment(l * n1, n1) = f * v;
  return out;
}

HNParams stacked_hn_block(const Stacked2DSpec& s, cplx phase) {
  const auto& c = s.cell[0];
  HNParams p;
  p.t_d = mix(c.t_d, c.u_d, c.u_u, phase);
  p.t_l = mix(c.t_l, c.v_dl, c.v_ul, phase);
  p.t_r = mix(c.t_r, c.v_dr, c.v_ur, phase);
  p.set_delta(s.delta1);
  return p;
}

SSHParams stacked_ssh_block(const Stacked2DSpec& s, cplx phase) {
  const auto& a = s.cell[0];
  const auto& b = s.cell[1];
  SSHParams p;
  p.n = s.n1;
  p.v1 = mix(a.t_d, a.u_d, a.u_u, phase);
  p.v2 = mix(b.t_d, b.u_d, b.u_u, phase);
  p.t_l1 = mix(a.t_l, a.v_dl, a.v_ul, phase);
  p.t_r1 = mix(a.t_r, a.v_dr, a.v_ur, phase);
  p.t_l2 = mix(b.t_l, b.v_dl, b.v_ul, phase);
  p.t_r2 = mix(b.t_r, b.v_dr, b.v_ur, phase);
  p.set_delta(s.delta1);
  return p;
}

StackedSpectrum stacked_hn_spectrum(const Stacked2DSpec& s, int threads) {
  s.validate();
  if (s.family != StackFamily::hn) throw Error("stacked_hn_spectrum: spec is not an HN stack");
  if (s.boundary == StackBoundary::open || s.boundary == StackBoundary::custom)
    return oracle_stack(s, "no Bloch reduction for this boundary");
  return assemble(s, threads, [&](cplx ph) { return hn_spectrum(stacked_hn_block(s, ph), s.n1); });
}

StackedSpectrum stacked_ssh_spectrum(const Stacked2DSpec& s, int threads) {
  s.validate();
  if (s.family != StackFamily::ssh) throw Error("stacked_ssh_spectrum: spec is not an SSH stack");
  if (s.boundary == StackBoundary::open || s.boundary == StackBoundary::custom)
    return oracle_stack(s, "no Bloch reduction for this boundary");
  if (s.n1 % 2 != 0) return oracle_stack(s, "odd N1: analytic path needs full unit cells");
  return assemble(s, threads, [&](cplx ph) { return ssh_spectrum(stacked_ssh_block(s, ph)); });
}

const char* to_string(StackBalance b) {
  switch (b) {
    case StackBalance::case1: return "case1";
    case StackBalance::case2: return "case2";
    case StackBalance::case3: return "case3";
    case StackBalance::case4: return "case4";
    case StackBalance::case5: return "case5";
    case StackBalance::case6: return "case6";
    case StackBalance::case7: return "case7";
    case StackBalance::general_r: return "general-r";
    case StackBalance::unbalanced: return "unbalanced";
  }
  return "?";
}

namespace {

StackBalance hn_structural_case(const LayerHoppings& c) {
  if (same(c.t_r, c.t_l) && same(c.v_ur, c.v_dl) && same(c.v_dr, c.v_ul)) return StackBalance::case1;
  if (same(c.t_l, c.t_r) && same(c.v_ul, c.v_ur) && same(c.v_dl, c.v_dr)) return StackBalance::case2;
  if (same(c.t_l, c.v_ur) && same(c.v_dl, c.t_r) && zero(c.v_ul) && zero(c.v_dr))
    return StackBalance::case3;
  if (same(c.t_l, c.v_dr) && zero(c.v_dl) && zero(c.v_ur) && same(c.v_ul, c.t_r))
    return StackBalance::case4;
  return StackBalance::unbalanced;
}

}  // namespace

StackBalance stacked_hn_balance(const Stacked2DSpec& s) {
  s.validate();
  const StackBalance tag = hn_structural_case(s.cell[0]);
  if (tag != StackBalance::unbalanced) return tag;
  for (int j = 0; j < s.n2; ++j) {
    const HNParams p = stacked_hn_block(s, omega(j, s.n2));
    const double a = std::abs(p.t_l), b = std::abs(p.t_r);
    if (std::abs(a - b) > kEqualTol * std::max({1.0, a, b})) return StackBalance::unbalanced;
  }
  return StackBalance::general_r;
}

StackBalance stacked_ssh_balance(const Stacked2DSpec& s) {
  s.validate();
  const auto& p = s.cell[0];
  const auto& q = s.cell[1];
  if (same(p.t_r, p.t_l) && same(p.v_dr, p.v_dl) && same(p.v_ur, p.v_ul) && same(q.t_r, q.t_l) &&
      same(q.v_dr, q.v_dl) && same(q.v_ur, q.v_ul))
    return StackBalance::case1;
  if (same(p.t_r, p.t_l) && same(p.v_dr, p.v_ul) && same(p.v_ur, p.v_dl) && same(q.t_r, q.t_l) &&
      same(q.v_dr, q.v_ul) && same(q.v_ur, q.v_dl))
    return StackBalance::case2;
  if (same(p.t_r, q.t_l) && same(p.v_dr, q.v_dl) && same(p.v_ur, q.v_ul) && same(q.t_r, p.t_l) &&
      same(q.v_dr, p.v_dl) && same(q.v_ur, p.v_ul))
    return StackBalance::case3;
  if (same(p.t_r, q.t_l) && same(p.v_dr, q.v_ul) && same(p.v_ur, q.v_dl) && same(q.t_r, p.t_l) &&
      same(q.v_dr, p.v_ul) && same(q.v_ur, p.v_dl))
    return StackBalance::case4;

  // Laurent coefficients in omega of h_r1 h_r2 (right) and h_l1 h_l2 (left), index k + 2.
  auto coeffs = [](cplx t1, cplx d1, cplx u1, cplx t2, cplx d2, cplx u2) {
    return std::array<cplx, 5>{u1 * u2, t1 * u2 + u1 * t2, t1 * t2 + d1 * u2 + u1 * d2,
                               t1 * d2 + d1 * t2, d1 * d2};
  };
  const auto right = coeffs(p.t_r, p.v_dr, p.v_ur, q.t_r, q.v_dr, q.v_ur);
  const auto left = coeffs(p.t_l, p.v_dl, p.v_ul, q.t_l, q.v_dl, q.v_ul);
  auto shifted_equal = [&](int shift) {
    for (int k = -4; k <= 4; ++k) {
      const int ir = k + 2, il = k - shift + 2;
      const cplx a = ir >= 0 && ir < 5 ? right[static_cast<std::size_t>(ir)] : 0.0;
      const cplx b = il >= 0 && il < 5 ? left[static_cast<std::size_t>(il)] : 0.0;
      if (!same(a, b)) return false;
    }
    return true;
  };
  if (shifted_equal(0)) return StackBalance::case5;
  if (shifted_equal(1)) return StackBalance::case6;
  if (shifted_equal(2)) return StackBalance::case7;
  for (int j = 0; j < s.n2; ++j) {
    const SSHParams b = stacked_ssh_block(s, omega(j, s.n2));
    const double x = std::abs(b.t_r1 * b.t_r2), y = std::abs(b.t_l1 * b.t_l2);
    if (std::abs(x - y) > kEqualTol * std::max({1.0, x, y})) return StackBalance::unbalanced;
  }
  return StackBalance::general_r;
}

EnvelopeCurves envelope_curves(const Stacked2DSpec& s, const std::vector<double>& t_grid) {
  const auto& c = s.cell[0];
  EnvelopeCurves e;
  e.t = t_grid;
  for (double t : t_grid) {
    const cplx ph = std::polar(1.0, t);
    const cplx z1 = mix(c.t_d, c.u_d, c.u_u, ph);
    const cplx z2 = 2.0 * std::sqrt(mix(c.t_r, c.v_dr, c.v_ur, ph)) *
                    std::sqrt(mix(c.t_l, c.v_dl, c.v_ul, ph));
    e.z1.push_back(z1);
    e.z2.push_back(z2);
    e.z_plus.push_back(z1 + z2);
    e.z_minus.push_back(z1 - z2);
  }
  const StackBalance tag =
      s.family == StackFamily::hn ? hn_structural_case(c) : StackBalance::unbalanced;
  if (tag == StackBalance::case3 || tag == StackBalance::case4) {
    // z_plus and z_minus join into one loop parametrised by the half angle.
    for (double tp : t_grid) {
      const cplx h = std::polar(1.0, tp);
      const cplx arm = tag == StackBalance::case3 ? c.t_l / h + c.t_r * h : c.t_l * h + c.t_r / h;
      e.loop.push_back(mix(c.t_d, c.u_d, c.u_u, h * h) + 2.0 * arm);
    }
  }
  return e;
}

std::vector<double> envelope_grid(int n2, int refine) {
  const int n = std::max(n2, 1) * std::max(refine, 1);
  std::vector<double> t;
  for (int i = 0; i <= n; ++i) t.push_back(2.0 * kPi * i / n);
  return t;
}

double segment_family_distance(const EnvelopeCurves& e, cplx z) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < e.t.size(); ++i) {
    const cplx a = e.z_minus[i], b = e.z_plus[i];
    const cplx d = b - a;
    const double len2 = std::norm(d);
    double u = len2 > 0.0 ? std::real((z - a) * std::conj(d)) / len2 : 0.0;
    u = std::clamp(u, 0.0, 1.0);
    best = std::min(best, std::abs(z - (a + u * d)));
  }
  return best;
}

StackedSpectrum triangular_spectrum(const Stacked2DSpec& s, int threads) {
  return stacked_hn_spectrum(s, threads);
}

Matrix kagome_matrix(const KagomeParams& p, int n1, int n2, cplx delta1, cplx delta2,
                     cplx delta2_prime) {
  if (n1 < 2 || n2 < 2) throw Error("kagome_matrix: need N1, N2 >= 2");
  const int dim = 3 * n1 * n2;
  Matrix h = Matrix::Zero(dim, dim);
  auto site = [&](int x, int y, int sub) { return (y * n1 + x) * 3 + sub; };
  constexpr int A = 0, B = 1, C = 2;
  // Adds H[to][from] = forward and H[from][to] = backward for a bond that moves by (dx, dy).
  auto bond = [&](int x, int y, int from_sub, int dx, int dy, int to_sub, cplx forward,
                  cplx backward) {
    const int tx = x + dx, ty = y + dy;
    const int wx = (tx + n1) % n1, wy = (ty + n2) % n2;
    const bool xwrap = wx != tx, ywrap = wy != ty;
    const int from = site(x, y, from_sub), to = site(wx, wy, to_sub);
    const cplx fx = xwrap ? delta1 : cplx{1.0};
    // Upper-right stacking corner uses delta2, lower-left uses delta2'.
    auto fy = [&](int row_y, int col_y) {
      if (!ywrap) return cplx{1.0};
      return row_y < col_y ? delta2 : delta2_prime;
    };
    h(to, from) += forward * fx * fy(wy, y);
    h(from, to) += backward * fx * fy(y, wy);
  };
  for (int y = 0; y < n2; ++y) {
    for (int x = 0; x < n1; ++x) {
      bond(x, y, A, 0, 0, B, p.t_r, p.t_l);
      bond(x, y, A, 0, 0, C, p.t_l, p.t_r);
      bond(x, y, B, 0, 0, C, p.t_r, p.t_l);
      bond(x, y, B, 1, 0, A, p.s_r, p.s_l);
      bond(x, y, C, 0, 1, A, p.s_l, p.s_r);
      bond(x, y, B, 1, -1, C, p.s_l, p.s_r);
    }
  }
  return h;
}

Spectrum separable_square_spectrum(const Spectrum& a, const Spectrum& b) {
  if (a.values.empty() || b.values.empty())
    throw Error("separable_square_spectrum: empty factor spectrum");
  Spectrum s;
  s.provenance = (a.provenance == Provenance::analytic && b.provenance == Provenance::analytic)
                     ? Provenance::analytic
                     : Provenance::oracle;
  s.fallback = a.fallback || b.fallback;
  for (const cplx& x : a.values)
    for (const cplx& y : b.values) s.values.push_back(x + y);
  return s;
}

Matrix kronecker_sum(const Matrix& a, const Matrix& b) {
  const Eigen::Index na = a.rows(), nb = b.rows();
  Matrix out = Matrix::Zero(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j)
      out.block(i * nb, j * nb, nb, nb).diagonal().array() += a(i, j);
    out.block(i * nb, i * nb, nb, nb) += b;
  }
  return out;
}

}  // namespace nhskin
