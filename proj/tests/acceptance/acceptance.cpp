// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "nhskin/matching.hpp"
#include "nhskin/models2d.hpp"
#include "nhskin/oracle.hpp"
#include "nhskin/poly.hpp"
#include "nhskin/profiles.hpp"
#include "nhskin/sensitivity.hpp"
#include "nhskin/topology.hpp"
#include "run.hpp"

#ifndef NHSKIN_CONFIG_DIR
#define NHSKIN_CONFIG_DIR "configs"
#endif

namespace {

using namespace nhskin;
using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

int g_failures = 0;

void report(int id, const char* title, const std::function<Verdict()>& check) {
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("threw: ") + e.what()};
  }
  std::printf("%s criterion %2d: %s -- %s\n", v.pass ? "PASS" : "FAIL", id, title,
              v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  /// Modulus in [0.5, 2], uniform phase.
  cplx hopping() {
    const double m = uniform(0.5, 2.0);
    return std::polar(m, uniform(0.0, 2.0 * kPi));
  }
  cplx onsite() {
    const double re = uniform(-1.0, 1.0);
    return {re, uniform(-1.0, 1.0)};
  }
  double phase() { return uniform(0.0, 2.0 * kPi); }

 private:
  std::mt19937_64 rng_;
};

double scale_of(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return 1.0 + m;
}

/// Matched distance relative to 1 + max |lambda| of the oracle.
double relative_mismatch(const Spectrum& analytic, const Matrix& h) {
  const auto oracle = dense_spectrum(h).spectrum.values;
  if (analytic.values.size() != oracle.size()) return INFINITY;
  return match_spectra(analytic.values, oracle).max_distance / scale_of(oracle);
}

// --------------------------------------------------------------------------------------

Verdict oracle_equivalence_1d() {
  const auto t0 = Clock::now();
  Draws d(101);
  const std::vector<cplx> deltas = {0.0, 0.3, 1.0};
  const std::pair<cplx, cplx> asym{0.3, 0.7};
  double worst = 0.0;
  int checks = 0, fallbacks = 0;
  std::string worst_model;
  auto record = [&](const std::string& model, const Spectrum& s, const Matrix& h) {
    const double r = relative_mismatch(s, h);
    ++checks;
    if (s.fallback || s.provenance != Provenance::analytic) ++fallbacks;
    if (r > worst || std::isnan(r)) {
      worst = r;
      worst_model = model;
    }
  };
  for (int draw = 0; draw < 50; ++draw) {
    {
      HNParams p{d.onsite(), d.hopping(), d.hopping()};
      const int n = d.integer(3, 30);
      for (cplx dl : deltas) {
        p.set_delta(dl);
        record("hn", hn_spectrum(p, n).spectrum, hn_matrix(p, n));
      }
    }
    {
      HNParams p{d.onsite(), d.hopping(), d.hopping(), d.onsite(), d.onsite()};
      const int n = d.integer(3, 30);
      for (cplx dl : deltas) {
        p.set_delta(dl);
        record("hn-general", hn_spectrum(p, n).spectrum, hn_matrix(p, n));
      }
      p.delta_l = asym.first;
      p.delta_r = asym.second;
      record("hn-general", hn_spectrum(p, n).spectrum, hn_matrix(p, n));
    }
    for (int variant = 0; variant < 3; ++variant) {
      SSHParams p;
      p.t_l1 = d.hopping();
      p.t_r1 = d.hopping();
      p.t_l2 = d.hopping();
      p.t_r2 = d.hopping();
      const char* name = variant == 0 ? "ssh even" : variant == 1 ? "ssh odd" : "ssh+potentials";
      if (variant == 2) {
        p.v1 = d.onsite();
        p.v2 = d.onsite();
      } else {
        p.v1 = p.v2 = d.onsite();
      }
      p.n = variant == 1 ? 2 * d.integer(1, 14) + 1 : 2 * d.integer(2, 15);
      for (cplx dl : deltas) {
        p.set_delta(dl);
        record(name, ssh_spectrum(p).spectrum, ssh_matrix(p));
      }
      p.delta_l = asym.first;
      p.delta_r = asym.second;
      record(name, ssh_spectrum(p).spectrum, ssh_matrix(p));
    }
    {
      const cplx tl = d.hopping(), ul = d.hopping();
      const int n = d.integer(4, 30);
      for (cplx dl : deltas)
        record("unidirectional", unidirectional_spectrum(tl, ul, dl, n),
               build_chain_matrix(unidirectional_stencil(n, tl, ul, dl)));
    }
    {
      const cplx tr = d.hopping(), ul = d.hopping();
      const int n = d.integer(4, 30);
      for (cplx dl : deltas)
        record("mixed-longrange", mixed_longrange_spectrum(tr, ul, dl, n).spectrum,
               build_chain_matrix(mixed_stencil(n, tr, ul, dl)));
    }
  }
  const double secs = seconds_since(t0);
  Verdict v;
  v.pass = worst <= 1e-7 && fallbacks == 0 && secs < 120.0;
  v.detail = fmt("%.0f comparisons, worst relative mismatch %.2e, %.0f oracle fallbacks, %.1f s",
                 checks, worst, fallbacks, secs) +
             (worst > 1e-7 ? " (worst model " + worst_model + ")" : "");
  return v;
}

Verdict hn_closed_forms() {
  Draws d(202);
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    HNParams p{d.onsite(), d.hopping(), d.hopping()};
    const cplx g = 2.0 * std::sqrt(p.t_l) * std::sqrt(p.t_r);
    for (int n = 2; n <= 30; ++n) {
      std::vector<cplx> open, periodic;
      for (int k = 1; k <= n; ++k) open.push_back(p.t_d + g * std::cos(kPi * k / (n + 1)));
      for (int k = 0; k < n; ++k) {
        const cplx e = std::polar(1.0, 2.0 * kPi * k / n);
        periodic.push_back(p.t_d + p.t_l * e + p.t_r / e);
      }
      p.set_delta(0.0);
      const auto s0 = hn_spectrum(p, n).spectrum.values;
      p.set_delta(1.0);
      const auto s1 = hn_spectrum(p, n).spectrum.values;
      worst = std::max({worst, match_spectra(s0, open).max_distance,
                        match_spectra(s1, periodic).max_distance});
    }
  }
  return {worst < 1e-10, fmt("20 draws x N=2..30, worst distance to the closed forms %.2e", worst)};
}

Verdict balanced_realness() {
  Draws d(303);
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    const double m = d.uniform(0.5, 2.0);
    HNParams p{d.onsite(), std::polar(m, d.phase()), std::polar(m, d.phase())};
    for (double delta : {-1.0, -0.5, 0.0, 0.5, 1.0})
      for (int n : {10, 20, 30}) {
        p.set_delta(delta);
        for (const cplx& a : hn_spectrum(p, n).alpha.values) worst = std::max(worst, std::abs(a.imag()));
      }
  }
  return {worst < 1e-8, fmt("20 phase draws x 5 deltas x 3 sizes, max |Im alpha| %.2e", worst)};
}

/// Base energies drawn in the padded bounding box of the Bloch curve; those on it are skipped.
std::vector<WindingResult> windings_at_random_bases(const BlochSampler& b, Draws& d, int count) {
  const auto curve = b.curve(512);
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const cplx& z : curve) {
    x0 = std::min(x0, z.real());
    x1 = std::max(x1, z.real());
    y0 = std::min(y0, z.imag());
    y1 = std::max(y1, z.imag());
  }
  const double pad = 0.25 * std::max({x1 - x0, y1 - y0, 1e-3});
  std::vector<WindingResult> out;
  for (int attempts = 0; static_cast<int>(out.size()) < count && attempts < 50 * count; ++attempts) {
    const cplx e{d.uniform(x0 - pad, x1 + pad), d.uniform(y0 - pad, y1 + pad)};
    try {
      out.push_back(winding_number(b, e));
    } catch (const Error&) {
    }
  }
  return out;
}

Verdict winding_point_gap() {
  Draws d(404);
  int unbalanced_ok = 0, balanced_nonzero = 0, balanced_probes = 0, family_nonzero = 0,
      family_probes = 0;
  const int draws = 20;
  for (int draw = 0; draw < draws; ++draw) {
    const cplx td = d.onsite();
    cplx tl = d.hopping(), tr = d.hopping();
    while (std::abs(std::abs(tl) - std::abs(tr)) < 0.1) tr = d.hopping();
    auto hn = [&](cplx l, cplx r) {
      return BlochSampler::scalar(
          [=](double k) { return td + l * std::polar(1.0, k) + r * std::polar(1.0, -k); });
    };
    const GapVerdict g = gap_classify(hn(tl, tr));
    if (g.point_gap && std::abs(g.witness_w) >= 1) ++unbalanced_ok;

    const cplx tb = std::polar(std::abs(tl), d.phase());
    for (const auto& w : windings_at_random_bases(hn(tl, tb), d, 50)) {
      ++balanced_probes;
      if (w.w != 0) ++balanced_nonzero;
    }
  }
  for (int family = 1; family <= 3; ++family) {
    const double t = d.uniform(0.5, 2.0), u = d.uniform(0.5, 2.0);
    const double phi = d.phase(), phi1 = d.phase(), phi2 = d.phase();
    const LongRangeParams p = nonwinding_family(family, t, u, phi, phi1, phi2);
    const auto b = BlochSampler::scalar([p](double k) { return bloch_1d(p, k); });
    for (const auto& w : windings_at_random_bases(b, d, 100)) {
      ++family_probes;
      if (w.w != 0) ++family_nonzero;
    }
  }
  Verdict v;
  v.pass = unbalanced_ok == draws && balanced_nonzero == 0 && balanced_probes == draws * 50 &&
           family_nonzero == 0 && family_probes == 300;
  v.detail = fmt("unbalanced point gaps %.0f/20; balanced nonzero w %.0f of %.0f bases; ",
                 unbalanced_ok, balanced_nonzero, balanced_probes) +
             fmt("non-winding families nonzero w %.0f of %.0f bases", family_nonzero, family_probes);
  return v;
}

Verdict zero_mode_criterion() {
  Draws d(505);
  int accepted = 0, misclassified = 0, indeterminate = 0;
  double worst_gap_with = 0.0, best_gap_without = INFINITY;
  while (accepted < 40) {
    SSHParams p;
    p.n = 30;
    p.t_l1 = d.hopping();
    p.t_r1 = d.hopping();
    p.t_l2 = d.hopping();
    p.t_r2 = d.hopping();
    const ZeroModeVerdict z = ssh_zero_mode_predicate(p);
    if (std::abs(z.margin) <= 0.3) continue;
    ++accepted;
    if (z.indeterminate) ++indeterminate;
    p.set_delta(0.0);
    double min_abs = INFINITY;
    for (const cplx& e : ssh_spectrum(p).spectrum.values) min_abs = std::min(min_abs, std::abs(e));
    const bool has_zero = min_abs < 1e-3;
    if (has_zero != z.predicted) ++misclassified;
    if (z.predicted) worst_gap_with = std::max(worst_gap_with, min_abs);
    else best_gap_without = std::min(best_gap_without, min_abs);
  }
  return {misclassified == 0 && indeterminate == 0,
          fmt("40 draws, %.0f misclassified; max min|E| with predicted zero mode %.2e, "
              "min min|E| without %.2e",
              misclassified, worst_gap_with, best_gap_without)};
}

Verdict mixed_structure() {
  Draws d(606);
  int degree_bad = 0;
  double worst_spread = 0.0;
  for (int draw = 0; draw < 30; ++draw) {
    const cplx tr = d.hopping(), ul = d.hopping();
    const int n = d.integer(3, 30);
    for (cplx delta : {cplx{0.0}, cplx{0.3}, cplx{1.0}}) {
      const MixedEquation eq{n, tr, ul, delta};
      if (polynomialize(eq).degree() != 3 * n || expected_degree(eq) != 3 * n) ++degree_bad;
      worst_spread =
          std::max(worst_spread, mixed_longrange_spectrum(tr, ul, delta, n).alpha.max_class_spread);
    }
  }
  int exponential = 0;
  std::string fits;
  const int balanced_draws = 3;
  for (int draw = 0; draw < balanced_draws; ++draw) {
    const double m = d.uniform(0.5, 2.0);
    const cplx tr = std::polar(m, d.phase()), ul = std::polar(m, d.phase());
    SpectrumFamily fam = [&](int n, cplx delta) {
      return mixed_longrange_spectrum(tr, ul, delta, n).spectrum;
    };
    ExponentOptions opt;
    opt.target = 0.1 * m;
    opt.sizes = {10, 14, 18, 22, 26};
    const ExponentResult r = sensitivity_exponent(fam, opt);
    if (r.exponential) ++exponential;
    fits += fmt(" xi=%.3f/R2=%.3f", r.xi, r.r2);
  }
  return {degree_bad == 0 && worst_spread < 1e-8 && exponential == balanced_draws,
          std::string(degree_bad == 0 ? "degree 3N in all 90 cases" : "degree mismatch") +
              fmt("; max intra-triple spread %.2e; |u_l|=|t_r| draws exponential %.0f/%.0f:",
                  worst_spread, exponential, balanced_draws) +
              fits};
}

LayerHoppings random_layer(Draws& d, bool zero_onsite = false) {
  LayerHoppings h;
  h.t_d = zero_onsite ? cplx{0.0} : d.onsite();
  h.t_l = d.hopping();
  h.t_r = d.hopping();
  h.u_d = d.hopping();
  h.u_u = d.hopping();
  h.v_dl = d.hopping();
  h.v_dr = d.hopping();
  h.v_ul = d.hopping();
  h.v_ur = d.hopping();
  return h;
}

Verdict oracle_equivalence_2d() {
  Draws d(707);
  double worst = 0.0;
  int checks = 0, fallbacks = 0, bc2_identity_bad = 0;
  for (StackFamily fam : {StackFamily::hn, StackFamily::ssh}) {
    for (int draw = 0; draw < 20; ++draw) {
      Stacked2DSpec s;
      s.family = fam;
      s.cell[0] = random_layer(d);
      s.cell[1] = random_layer(d);
      s.n1 = fam == StackFamily::ssh ? 2 * d.integer(2, 6) : d.integer(3, 12);
      s.n2 = d.integer(1, 12);
      const double delta_mod = d.uniform(0.0, 1.0);
      s.delta1 = std::polar(delta_mod, d.phase());
      auto solve = [&](const Stacked2DSpec& x) {
        return fam == StackFamily::hn ? stacked_hn_spectrum(x) : stacked_ssh_spectrum(x);
      };
      for (StackBoundary b : {StackBoundary::bc1, StackBoundary::bc2}) {
        s.boundary = b;
        if (b == StackBoundary::bc2) {
          const double mod = d.uniform(0.2, 1.5);
          s.delta2 = std::polar(mod, d.phase());
        } else {
          s.delta2 = 1.0;
        }
        const StackedSpectrum st = solve(s);
        if (st.spectrum.fallback) ++fallbacks;
        worst = std::max(worst, relative_mismatch(st.spectrum, build_stacked_matrix(s)));
        ++checks;
      }
      s.boundary = StackBoundary::bc1;
      const auto v1 = solve(s).spectrum.values;
      s.boundary = StackBoundary::bc2;
      s.delta2 = 1.0;
      const auto v2 = solve(s).spectrum.values;
      if (v1 != v2) ++bc2_identity_bad;
    }
  }
  return {worst <= 1e-7 && fallbacks == 0 && bc2_identity_bad == 0,
          fmt("%.0f comparisons, worst relative mismatch %.2e, %.0f fallbacks; "
              "bc2 at delta2=1 differs from bc1 in %.0f of 40 draws",
              checks, worst, fallbacks, bc2_identity_bad)};
}

Stacked2DSpec envelope_case(int which) {
  Stacked2DSpec s;
  s.family = StackFamily::hn;
  s.n1 = s.n2 = 30;
  LayerHoppings& h = s.cell[0];
  h.t_d = 1.0;
  h.u_u = -3.0;
  h.u_d = 2.0;
  if (which == 1) {
    h.t_r = h.t_l = 2.0;
    h.v_ur = h.v_dl = 4.0;
    h.v_dr = h.v_ul = 3.0;
  } else if (which == 2) {
    h.t_r = h.t_l = 2.0;
    h.v_ur = h.v_ul = 3.0;
    h.v_dr = h.v_dl = 4.0;
  } else {
    h.t_r = h.v_dl = 1.0;
    h.t_l = h.v_ur = 2.0;
    h.v_dr = h.v_ul = 0.0;
  }
  return s;
}

Verdict envelope_containment() {
  double worst = 0.0;
  int values = 0;
  std::string tags;
  for (int which : {1, 2, 3}) {
    Stacked2DSpec s = envelope_case(which);
    tags += std::string(which > 1 ? "," : "") + to_string(stacked_hn_balance(s));
    const EnvelopeCurves e = envelope_curves(s, envelope_grid(s.n2));
    for (const cplx& delta : delta_grid(0.0, 1.0, 0.01)) {
      s.delta1 = delta;
      for (const cplx& z : stacked_hn_spectrum(s).spectrum.values) {
        worst = std::max(worst, segment_family_distance(e, z));
        ++values;
      }
    }
  }
  // Case 2: z_plus/z_minus must trace t_d +- 2 t_r + (u_d +- 2 v_dr) e^{it} + (u_u +- 2 v_ur) e^{-it}.
  const Stacked2DSpec s2 = envelope_case(2);
  const LayerHoppings& h = s2.cell[0];
  const EnvelopeCurves e2 = envelope_curves(s2, envelope_grid(s2.n2));
  double ellipse_err = 0.0;
  for (std::size_t i = 0; i < e2.t.size(); ++i) {
    const cplx ph = std::polar(1.0, e2.t[i]);
    const cplx up = h.t_d + 2.0 * h.t_r + (h.u_d + 2.0 * h.v_dr) * ph + (h.u_u + 2.0 * h.v_ur) / ph;
    const cplx dn = h.t_d - 2.0 * h.t_r + (h.u_d - 2.0 * h.v_dr) * ph + (h.u_u - 2.0 * h.v_ur) / ph;
    const double straight = std::max(std::abs(e2.z_plus[i] - up), std::abs(e2.z_minus[i] - dn));
    const double swapped = std::max(std::abs(e2.z_plus[i] - dn), std::abs(e2.z_minus[i] - up));
    ellipse_err = std::max(ellipse_err, std::min(straight, swapped));
  }
  return {worst <= 1e-6 && ellipse_err < 1e-9 && tags == "case1,case2,case3",
          "tags " + tags + fmt("; %.0f eigenvalues, max distance to segments %.2e; case-2 "
                               "deviation from the centred ellipses %.2e",
                               values, worst, ellipse_err)};
}

Verdict triangular_skin() {
  std::vector<double> fractions;
  std::string detail = "heavier-edge fraction";
  for (int n2 : {2, 6, 10, 30}) {
    const Stacked2DSpec s = triangular_spec(1.0, 5.0, 30, n2, 0.0, StackBoundary::open);
    const EigenSystem es = dense_spectrum(build_stacked_matrix(s), Vectors::both);
    const std::size_t rep = representative_index(es.spectrum.values);
    const StateProfiles p = expectation_profiles(es.right.col(static_cast<Eigen::Index>(rep)),
                                                 es.left.col(static_cast<Eigen::Index>(rep)));
    fractions.push_back(
        localization_report(marginal_direction1(p.right_right, 30, n2)).heavier_edge_fraction());
    detail += fmt(" N2=%.0f:%.3f", n2, fractions.back());
  }
  bool monotone = true;
  for (std::size_t i = 1; i < fractions.size(); ++i) monotone = monotone && fractions[i] < fractions[i - 1];

  auto screen = [](int n2) {
    SpectrumAt model = [n2](cplx delta) {
      return triangular_spectrum(triangular_spec(1.0, 5.0, 30, n2, delta, StackBoundary::open))
          .spectrum;
    };
    return classify_sensitivity(model);
  };
  const SensitivityScreen s2 = screen(2), s30 = screen(30);
  detail += fmt("; screen ratio N2=2 %.2f, N2=30 %.2f", s2.ratio, s30.ratio);

  int nonzero = 0, tested = 0;
  for (double phi : {0.3, 1.1, 2.0, 2.9})
    for (int n2 : {2, 3, 6, 10, 30}) {
      ++tested;
      if (tridiag_det_winding(1.0, std::polar(1.0, phi), n2).winding.w != 0) ++nonzero;
    }
  detail += fmt("; phase-only det winding nonzero in %.0f of %.0f", nonzero, tested);
  return {monotone && s2.exponential && !s30.exponential && nonzero == 0, detail};
}

Verdict sensitivity_exponents() {
  const auto t0 = Clock::now();
  ExponentOptions opt;
  opt.target = 0.5;
  opt.sizes = {10, 14, 18, 22, 26};
  auto family = [](cplx tl, cplx tr) {
    return SpectrumFamily([tl, tr](int n, cplx delta) {
      HNParams p{0.0, tl, tr};
      p.set_delta(delta);
      return hn_spectrum(p, n).spectrum;
    });
  };
  const ExponentResult unbalanced = sensitivity_exponent(family(1.0, 2.0), opt);
  const cplx tb = std::polar(1.0, 0.7);
  const ExponentResult balanced = sensitivity_exponent(family(1.0, tb), opt);
  int balanced_exponential_screens = 0;
  for (int n : opt.sizes) {
    SpectrumAt at = [&](cplx delta) { return family(1.0, tb)(n, delta); };
    if (classify_sensitivity(at).exponential) ++balanced_exponential_screens;
  }
  const double secs = seconds_since(t0);
  return {unbalanced.xi > 0.0 && unbalanced.r2 >= 0.95 && unbalanced.exponential &&
              !balanced.exponential && balanced_exponential_screens == 0 && secs < 180.0,
          fmt("unbalanced xi %.4f R2 %.4f; balanced fitted sizes %.0f, ", unbalanced.xi,
              unbalanced.r2, balanced.fitted) +
              fmt("exponential screens %.0f of 5; %.1f s", balanced_exponential_screens, secs)};
}

Verdict determinism() {
  namespace fs = std::filesystem;
  std::vector<fs::path> configs;
  for (const auto& e : fs::directory_iterator(NHSKIN_CONFIG_DIR))
    if (e.path().extension() == ".json") configs.push_back(e.path());
  std::sort(configs.begin(), configs.end());
  const fs::path scratch = fs::temp_directory_path() / "nhskin_acceptance";
  int mismatched = 0, failed = 0, slow = 0;
  double slowest = 0.0;
  std::string bad;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  for (const auto& path : configs) {
    std::string first;
    for (int pass = 0; pass < 2; ++pass) {
      const auto t0 = Clock::now();
      cli::RunOptions opt;
      opt.out_dir = scratch / ("pass" + std::to_string(pass));
      cli::RunOutcome out;
      try {
        out = cli::run(cli::load_config(path), opt);
      } catch (const std::exception& e) {
        out.exit_code = cli::kExitRuntime;
        out.message = e.what();
      }
      const double secs = seconds_since(t0);
      slowest = std::max(slowest, secs);
      if (secs > 300.0) ++slow;
      if (out.exit_code != cli::kExitOk) {
        ++failed;
        bad += " " + path.stem().string() + "(" + out.message + ")";
        break;
      }
      const std::string text = slurp(out.csv);
      if (pass == 0) first = text;
      else if (text != first) {
        ++mismatched;
        bad += " " + path.stem().string();
      }
    }
  }
  fs::remove_all(scratch);
  return {mismatched == 0 && failed == 0 && slow == 0 && !configs.empty(),
          fmt("%.0f configs run twice, %.0f byte mismatches, %.0f failures, slowest run %.1f s",
              configs.size(), mismatched, failed, slowest) +
              bad};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  report(1, "1D oracle equivalence", oracle_equivalence_1d);
  report(2, "HN closed forms at delta 0 and 1", hn_closed_forms);
  report(3, "balanced HN wavenumbers are real", balanced_realness);
  report(4, "winding and point-gap correspondence", winding_point_gap);
  report(5, "SSH zero-mode criterion", zero_mode_criterion);
  report(6, "mixed long-range structure", mixed_structure);
  report(7, "2D oracle equivalence", oracle_equivalence_2d);
  report(8, "envelope containment", envelope_containment);
  report(9, "triangular skin effect", triangular_skin);
  report(10, "sensitivity exponents", sensitivity_exponents);
  report(11, "determinism of shipped configs", determinism);
  std::printf("%d of 11 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
