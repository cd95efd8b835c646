#include "run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <tuple>

#include "nhskin/generic.hpp"
#include "nhskin/matching.hpp"
#include "nhskin/models2d.hpp"
#include "nhskin/oracle.hpp"
#include "nhskin/profiles.hpp"
#include "nhskin/sensitivity.hpp"

namespace nhskin::cli {

namespace {

using json = nlohmann::json;

constexpr int kValidationSize = 12;

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

StackBoundary stack_boundary(const std::string& b) {
  if (b == "bc1") return StackBoundary::bc1;
  if (b == "bc2") return StackBoundary::bc2;
  if (b == "open") return StackBoundary::open;
  return StackBoundary::custom;
}

/// Corner factors for direction 2 of the models without a Stacked2DSpec.
std::pair<cplx, cplx> direction2_corners(const RunConfig& c) {
  if (c.boundary == "bc1") return {1.0, 1.0};
  if (c.boundary == "open") return {0.0, 0.0};
  if (c.boundary == "bc2") return {c.delta2, 1.0 / c.delta2};
  return {c.delta2, c.delta2_prime};
}

HNParams hn_params(const RunConfig& c, cplx dl, cplx dr) {
  HNParams p;
  p.t_d = c.param("t_d");
  p.t_l = c.param("t_l");
  p.t_r = c.param("t_r");
  if (c.model == "hn-general") {
    p.eps_first = c.param("eps_first");
    p.eps_last = c.param("eps_last");
  }
  p.delta_l = dl;
  p.delta_r = dr;
  return p;
}

SSHParams ssh_params(const RunConfig& c, cplx dl, cplx dr, int n) {
  SSHParams p;
  p.n = n;
  p.t_l1 = c.param("t_l1");
  p.t_r1 = c.param("t_r1");
  p.t_l2 = c.param("t_l2");
  p.t_r2 = c.param("t_r2");
  p.v1 = c.param("v1");
  p.v2 = c.param("v2");
  p.delta_l = dl;
  p.delta_r = dr;
  return p;
}

LayerHoppings layer(const RunConfig& c, const std::string& suffix) {
  LayerHoppings h;
  h.t_d = c.param("t_d" + suffix);
  h.t_l = c.param("t_l" + suffix);
  h.t_r = c.param("t_r" + suffix);
  h.u_d = c.param("u_d" + suffix);
  h.u_u = c.param("u_u" + suffix);
  h.v_dl = c.param("v_dl" + suffix);
  h.v_dr = c.param("v_dr" + suffix);
  h.v_ul = c.param("v_ul" + suffix);
  h.v_ur = c.param("v_ur" + suffix);
  return h;
}

Stacked2DSpec stacked_spec(const RunConfig& c, cplx delta1, int n1, int n2) {
  Stacked2DSpec s;
  if (c.model == "triangular") {
    s = triangular_spec(c.param("t_l"), c.param("t_r"), n1, n2, delta1,
                        stack_boundary(c.boundary), c.delta2);
  } else if (c.model == "stacked-hn") {
    s.family = StackFamily::hn;
    s.cell[0] = layer(c, "");
  } else {
    s.family = StackFamily::ssh;
    s.cell[0] = layer(c, "1");
    s.cell[1] = layer(c, "2");
  }
  s.n1 = n1;
  s.n2 = n2;
  s.delta1 = delta1;
  s.boundary = stack_boundary(c.boundary);
  s.delta2 = c.delta2;
  s.delta2_prime = c.delta2_prime;
  s.validate();
  return s;
}

KagomeParams kagome_params(const RunConfig& c) {
  return {c.param("t_l"), c.param("t_r"), c.param("s_l"), c.param("s_r")};
}

HNParams axis_params(const RunConfig& c, const std::string& axis, cplx delta) {
  HNParams p;
  p.t_d = c.param(axis + "_t_d");
  p.t_l = c.param(axis + "_t_l");
  p.t_r = c.param(axis + "_t_r");
  p.set_delta(delta);
  return p;
}

/// Bottom-right corner of direction 2 for the separable model: its chain uses one factor.
cplx separable_delta2(const RunConfig& c) {
  if (c.boundary == "custom" && c.delta2 != c.delta2_prime)
    throw ConfigError("boundary: separable-square needs equal corner factors in direction 2");
  if (c.boundary == "bc2")
    throw ConfigError("boundary: separable-square supports bc1, open or custom");
  return direction2_corners(c).first;
}

Spectrum oracle_only(const Matrix& h, const std::string& why) {
  Spectrum s = dense_spectrum(h).spectrum;
  s.note = why;
  return s;
}

bool is_stacked(const RunConfig& c) {
  return c.model == "stacked-hn" || c.model == "stacked-ssh" || c.model == "triangular";
}

std::string provenance_tag(const Spectrum& s) {
  return s.provenance == Provenance::oracle || s.fallback ? "oracle" : "analytic";
}

struct Row {
  double delta_re = 0.0, delta_im = 0.0;
  int j = -1;
  double re = 0.0, im = 0.0;
  std::string provenance;

  bool operator<(const Row& o) const {
    return std::tie(delta_re, delta_im, j, re, im, provenance) <
           std::tie(o.delta_re, o.delta_im, o.j, o.re, o.im, o.provenance);
  }
};

void append_rows(std::vector<Row>& rows, cplx delta, const Evaluation& e) {
  const std::string tag = provenance_tag(e.spectrum);
  for (std::size_t i = 0; i < e.spectrum.values.size(); ++i) {
    Row r;
    r.delta_re = delta.real();
    r.delta_im = delta.imag();
    r.j = e.block.empty() ? -1 : e.block[i];
    r.re = e.spectrum.values[i].real();
    r.im = e.spectrum.values[i].imag();
    r.provenance = tag;
    rows.push_back(r);
  }
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(p.string() + ": cannot write");
  out << text;
  if (!out) throw Error(p.string() + ": write failed");
}

std::string spectrum_csv(std::vector<Row> rows) {
  std::sort(rows.begin(), rows.end());
  std::string s = "delta_re,delta_im,j,re,im,provenance\n";
  for (const Row& r : rows) {
    s += format_number(r.delta_re) + "," + format_number(r.delta_im) + ",";
    if (r.j >= 0) s += std::to_string(r.j);
    s += "," + format_number(r.re) + "," + format_number(r.im) + "," + r.provenance + "\n";
  }
  return s;
}

/// Generic numeric table; rows are sorted as numeric tuples.
std::string table_csv(const std::string& header, std::vector<std::vector<double>> rows) {
  std::sort(rows.begin(), rows.end());
  std::string s = header + "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + format_number(r[i]);
    s += "\n";
  }
  return s;
}

double relative_allowed(const std::vector<cplx>& values, double tolerance) {
  double m = 0.0;
  for (const cplx& v : values) m = std::max(m, std::abs(v));
  return tolerance * (1.0 + m);
}

json screen_json(const SensitivityScreen& s) {
  return {{"first_step", s.first_step},
          {"second_step", s.second_step},
          {"ratio", s.ratio},
          {"exponential", s.exponential}};
}

json winding_json(const WindingResult& w) {
  return {{"base", to_json(w.base)}, {"w", w.w}, {"samples", w.samples},
          {"min_abs_det", w.min_abs_det}, {"raw", w.raw}};
}

SpectrumAt fixed_size_model(const RunConfig& c, const Sizes& sz, int threads) {
  return [&c, sz, threads](cplx d) { return evaluate(c, d, d, sz, threads).spectrum; };
}

std::uint64_t effective_seed(const RunConfig& c, const RunOptions& opt) {
  return opt.seed ? *opt.seed : c.seed;
}

// ---------------------------------------------------------------------------
// Tasks. Each fills the sidecar and returns the CSV text.

std::string task_spectrum(const RunConfig& c, const RunOptions& opt, json& side) {
  const Sizes sz = configured_sizes(c);
  const auto points = c.delta.points();
  std::vector<Evaluation> evals(points.size());
  if (is_stacked(c) || points.size() == 1) {
    for (std::size_t i = 0; i < points.size(); ++i)
      evals[i] = evaluate(c, points[i].first, points[i].second, sz, opt.threads);
  } else {
    std::vector<cplx> grid;
    for (const auto& p : points) grid.push_back(p.first);
    const auto specs = delta_sweep(fixed_size_model(c, sz, 1), grid, opt.threads);
    for (std::size_t i = 0; i < specs.size(); ++i) evals[i].spectrum = specs[i];
  }

  std::vector<Row> rows;
  json notes = json::array();
  double worst = 0.0, worst_allowed = 0.0;
  bool verify_failed = false;
  for (std::size_t i = 0; i < points.size(); ++i) {
    append_rows(rows, points[i].first, evals[i]);
    if (evals[i].spectrum.fallback)
      notes.push_back({{"delta", to_json(points[i].first)}, {"note", evals[i].spectrum.note}});
    if (c.verify && evals[i].spectrum.provenance == Provenance::analytic) {
      const auto oracle =
          dense_spectrum(assemble(c, points[i].first, points[i].second, sz)).spectrum;
      const double d = match_spectra(evals[i].spectrum.values, oracle.values).max_distance;
      const double allowed = relative_allowed(oracle.values, opt.tolerance);
      if (d > worst) {
        worst = d;
        worst_allowed = allowed;
      }
      if (d > allowed) verify_failed = true;
    }
  }
  json& r = side["results"];
  r["points"] = points.size();
  r["values_per_point"] = evals.empty() ? 0 : evals.front().spectrum.size();
  r["provenance"] = evals.empty() ? "analytic" : provenance_tag(evals.front().spectrum);
  r["fallback_notes"] = notes;
  if (!evals.empty() && !evals.front().diagnostics.empty())
    r["diagnostics"] = evals.front().diagnostics;
  if (c.verify) {
    r["verification"] = {{"max_distance", worst}, {"allowed", worst_allowed},
                         {"pass", !verify_failed}};
  }
  if (c.task == Task::sweep) {
    std::vector<double> jumps;
    double max_step = 0.0;
    for (std::size_t i = 0; i < evals.size(); ++i) {
      jumps.push_back(hausdorff(evals.front().spectrum, evals[i].spectrum));
      if (i > 0) max_step = std::max(max_step, hausdorff(evals[i - 1].spectrum, evals[i].spectrum));
    }
    r["distance_from_first"] = jumps;
    r["max_adjacent_distance"] = max_step;
    // Grid points already evaluated are reused by the screen.
    const SpectrumAt fresh = fixed_size_model(c, sz, opt.threads);
    const SpectrumAt cached = [&](cplx d) {
      for (std::size_t i = 0; i < points.size(); ++i)
        if (std::abs(points[i].first - d) <= 1e-12) return evals[i].spectrum;
      return fresh(d);
    };
    r["screen"] = screen_json(classify_sensitivity(cached, c.screen_eps, c.screen_threshold));
  }
  if (verify_failed) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "validation failure: max distance %.3e exceeds %.3e", worst,
                  worst_allowed);
    side["validation_failure"] = buf;
  }
  return spectrum_csv(std::move(rows));
}

std::string task_states(const RunConfig& c, const RunOptions&, json& side) {
  const Sizes sz = configured_sizes(c);
  const int cell = c.model == "kagome" ? 3 : 1;
  std::vector<std::vector<double>> rows;
  json reports = json::array();
  for (const auto& [dl, dr] : c.delta.points()) {
    const EigenSystem es = dense_spectrum(assemble(c, dl, dr, sz), Vectors::both);
    const std::size_t rep = representative_index(es.spectrum.values);
    auto report_for = [&](std::size_t i) {
      const StateProfiles p = expectation_profiles(es.right.col(static_cast<Eigen::Index>(i)),
                                                   es.left.col(static_cast<Eigen::Index>(i)));
      const std::vector<double> w =
          c.is_2d() ? marginal_direction1(p.right_right, sz.n1, sz.n2, cell) : p.right_right;
      return std::make_pair(p, localization_report(w));
    };
    const auto [profile, report] = report_for(rep);
    double mean_fraction = 0.0;
    for (std::size_t i = 0; i < es.spectrum.size(); ++i)
      mean_fraction += report_for(i).second.heavier_edge_fraction();
    mean_fraction /= static_cast<double>(es.spectrum.size());

    for (std::size_t site = 0; site < profile.sites(); ++site) {
      const cplx lr = profile.left_right ? (*profile.left_right)[site] : cplx{0.0};
      rows.push_back({dl.real(), dl.imag(), static_cast<double>(site), profile.right_right[site],
                      profile.left_left[site], lr.real(), lr.imag()});
    }
    reports.push_back({{"delta", to_json(dl)},
                       {"representative", to_json(es.spectrum.values[rep])},
                       {"condition", es.condition[rep]},
                       {"near_exceptional", profile.near_exceptional},
                       {"center_of_mass", report.center_of_mass},
                       {"left_edge_fraction", report.left_edge_fraction},
                       {"right_edge_fraction", report.right_edge_fraction},
                       {"heavier_edge", report.heavier_right ? "right" : "left"},
                       {"heavier_edge_fraction", report.heavier_edge_fraction()},
                       {"decay_rate", report.decay_rate},
                       {"fit_r2", report.fit_r2},
                       {"mean_heavier_edge_fraction", mean_fraction}});
  }
  side["results"]["states"] = reports;
  return table_csv("delta_re,delta_im,site,right_right,left_left,left_right_re,left_right_im",
                   std::move(rows));
}

std::string task_winding(const RunConfig& c, const RunOptions& opt, json& side) {
  std::vector<std::vector<double>> rows;
  json results = json::array();
  if (c.model == "triangular") {
    const Sizes sz = configured_sizes(c);
    const DetWinding d = tridiag_det_winding(c.param("t_l"), c.param("t_r"), sz.n2);
    results.push_back({{"w", d.winding.w},
                       {"phase_condition", d.phase_condition},
                       {"degenerate", d.degenerate},
                       {"base", to_json(d.winding.base)}});
    rows.push_back({d.winding.base.real(), d.winding.base.imag(), double(d.winding.w),
                    double(d.winding.samples)});
    side["w"] = d.winding.w;
    side["results"]["windings"] = results;
    return table_csv("base_re,base_im,w,samples", std::move(rows));
  }
  const auto sampler = bloch_sampler(c);
  if (!sampler) throw ConfigError("task: winding is not defined for model " + c.model);
  std::vector<cplx> bases = c.base_energies;
  int skipped = 0;
  if (c.random_bases > 0) {
    const auto curve = sampler->curve(256);
    double x0 = curve.front().real(), x1 = x0, y0 = curve.front().imag(), y1 = y0;
    for (const cplx& z : curve) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
    const double pad = 0.2 * std::max({x1 - x0, y1 - y0, 1e-3});
    std::mt19937_64 rng(effective_seed(c, opt));
    std::uniform_real_distribution<double> ux(x0 - pad, x1 + pad), uy(y0 - pad, y1 + pad);
    for (int i = 0; i < c.random_bases; ++i) {
      const double x = ux(rng);
      const double y = uy(rng);
      bases.push_back({x, y});
    }
  }
  if (bases.empty()) throw ConfigError("base_energies: winding needs at least one base energy");
  for (const cplx& b : bases) {
    try {
      const WindingResult w = winding_number(*sampler, b);
      results.push_back(winding_json(w));
      rows.push_back({b.real(), b.imag(), double(w.w), double(w.samples)});
    } catch (const Error& e) {
      ++skipped;
      results.push_back({{"base", to_json(b)}, {"error", e.what()}});
    }
  }
  side["results"]["windings"] = results;
  side["results"]["skipped"] = skipped;
  if (bases.size() == 1 && results.front().contains("w")) side["w"] = results.front()["w"];
  return table_csv("base_re,base_im,w,samples", std::move(rows));
}

std::string task_gap(const RunConfig& c, const RunOptions&, json& side) {
  const auto sampler = bloch_sampler(c);
  if (!sampler) throw ConfigError("task: gap is not defined for model " + c.model);
  const GapVerdict g = gap_classify(*sampler);
  side["results"] = {{"point_gap", g.point_gap}, {"witness", to_json(g.witness)},
                     {"witness_w", g.witness_w}, {"probes", g.probes}};
  side["verdict"] = g.point_gap ? "point-gap" : "line-gap-consistent";
  std::vector<std::vector<double>> rows;
  if (g.point_gap) rows.push_back({g.witness.real(), g.witness.imag(), double(g.witness_w)});
  return table_csv("base_re,base_im,w", std::move(rows));
}

std::string task_envelope(const RunConfig& c, const RunOptions& opt, json& side) {
  if (c.model != "stacked-hn" && c.model != "triangular")
    throw ConfigError("task: envelope is defined for stacked-hn and triangular only");
  const Sizes sz = configured_sizes(c);
  const Stacked2DSpec base = stacked_spec(c, 0.0, sz.n1, sz.n2);
  const EnvelopeCurves e = envelope_curves(base, envelope_grid(sz.n2));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < e.t.size(); ++i) {
    const cplx loop = e.loop.empty() ? cplx{0.0} : e.loop[i];
    rows.push_back({e.t[i], e.z1[i].real(), e.z1[i].imag(), e.z2[i].real(), e.z2[i].imag(),
                    e.z_plus[i].real(), e.z_plus[i].imag(), e.z_minus[i].real(),
                    e.z_minus[i].imag(), loop.real(), loop.imag()});
  }
  double worst = 0.0;
  for (const auto& [dl, dr] : c.delta.points()) {
    const Evaluation ev = evaluate(c, dl, dr, sz, opt.threads);
    for (const cplx& z : ev.spectrum.values) worst = std::max(worst, segment_family_distance(e, z));
  }
  side["results"] = {{"balance", to_string(stacked_hn_balance(base))},
                     {"max_distance_to_segments", worst},
                     {"has_loop", !e.loop.empty()},
                     {"samples", e.t.size()}};
  side["verdict"] = to_string(stacked_hn_balance(base));
  return table_csv(
      "t,z1_re,z1_im,z2_re,z2_im,z_plus_re,z_plus_im,z_minus_re,z_minus_im,loop_re,loop_im",
      std::move(rows));
}

std::string task_sensitivity(const RunConfig& c, const RunOptions& opt, json& side) {
  const Sizes base = configured_sizes(c);
  SpectrumFamily family = [&c, base, &opt](int n, cplx d) {
    Sizes sz = base;
    if (c.is_2d()) sz.n1 = n;
    else sz.n = n;
    return evaluate(c, d, d, sz, opt.threads).spectrum;
  };
  ExponentOptions eo;
  eo.target = c.target;
  eo.sizes = c.sizes;
  eo.exclude_smallest = c.exclude_smallest;
  const ExponentResult r = sensitivity_exponent(family, eo);
  std::vector<std::vector<double>> rows;
  json points = json::array();
  for (const CriticalDelta& p : r.points) {
    rows.push_back({double(p.n), p.delta, p.reached ? 1.0 : 0.0});
    points.push_back({{"n", p.n}, {"delta", p.delta}, {"reached", p.reached}});
  }
  side["results"] = {{"points", points}, {"xi", r.xi},         {"r2", r.r2},
                     {"fitted", r.fitted}, {"exponential", r.exponential},
                     {"target", c.target}};
  const bool have_size = c.is_2d() ? (base.n1 > 0 && base.n2 > 0) : base.n > 0;
  if (have_size)
    side["results"]["screen"] = screen_json(
        classify_sensitivity(fixed_size_model(c, base, opt.threads), c.screen_eps, c.screen_threshold));
  side["verdict"] = r.exponential ? "exponential" : "non-exponential";
  return table_csv("n,critical_delta,reached", std::move(rows));
}

std::string task_balance(const RunConfig& c, const RunOptions&, json& side) {
  json r = json::object();
  std::string verdict;
  const Sizes sz = configured_sizes(c);
  if (c.model == "hn" || c.model == "hn-general") {
    const BalanceResult b = hn_balanced(hn_params(c, 0.0, 0.0));
    r = {{"balanced", b.balanced}, {"theta", b.theta}};
    verdict = b.balanced ? "balanced" : "unbalanced";
  } else if (c.model == "ssh" || c.model == "ssh-odd") {
    const SSHParams p = ssh_params(c, 0.0, 0.0, std::max(sz.n, 2));
    const BalanceResult b = ssh_balanced(p);
    const ZeroModeVerdict z = ssh_zero_mode_predicate(p);
    r = {{"balanced", b.balanced},
         {"theta", b.theta},
         {"zero_mode_predicted", z.predicted},
         {"zero_mode_indeterminate", z.indeterminate},
         {"zero_mode_margin", z.margin}};
    verdict = b.balanced ? "balanced" : "unbalanced";
  } else if (c.model == "stacked-hn" || c.model == "stacked-ssh" || c.model == "triangular") {
    const Stacked2DSpec s = stacked_spec(c, 0.0, std::max(sz.n1, 2), std::max(sz.n2, 1));
    const StackBalance b =
        s.family == StackFamily::hn ? stacked_hn_balance(s) : stacked_ssh_balance(s);
    verdict = to_string(b);
    r = {{"case", verdict}};
    if (c.model == "triangular") {
      const DetWinding d = tridiag_det_winding(c.param("t_l"), c.param("t_r"), s.n2);
      r["phase_condition"] = d.phase_condition;
      r["det_winding"] = d.winding.w;
    }
  } else if (c.model == "separable-square") {
    const BalanceResult bx = hn_balanced(axis_params(c, "x", 0.0));
    const BalanceResult by = hn_balanced(axis_params(c, "y", 0.0));
    r = {{"x_balanced", bx.balanced}, {"y_balanced", by.balanced}};
    verdict = bx.balanced && by.balanced ? "balanced" : "unbalanced";
  } else if (c.model == "kagome") {
    throw ConfigError("task: balance is not defined for model kagome");
  }
  if (const auto sampler = bloch_sampler(c)) {
    const GapVerdict g = gap_classify(*sampler);
    r["point_gap"] = g.point_gap;
    r["witness_w"] = g.witness_w;
    if (verdict.empty()) verdict = g.point_gap ? "point-gap" : "line-gap-consistent";
  }
  if (c.model == "mixed-longrange")
    r["magnitude_balanced"] = std::abs(std::abs(c.param("u_l")) - std::abs(c.param("t_r"))) <=
                              1e-12 * std::max(1.0, std::abs(c.param("t_r")));
  side["results"] = r;
  side["verdict"] = verdict;
  std::string csv = "key,value\n";
  for (const auto& [k, v] : r.items()) csv += k + "," + v.dump() + "\n";
  return csv;
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Sizes configured_sizes(const RunConfig& c) { return {c.n, c.n1, c.n2}; }

Evaluation evaluate(const RunConfig& c, cplx dl, cplx dr, const Sizes& sz, int threads) {
  Evaluation e;
  const std::string& m = c.model;
  if (m == "hn" || m == "hn-general") {
    e.spectrum = hn_spectrum(hn_params(c, dl, dr), sz.n).spectrum;
  } else if (m == "ssh" || m == "ssh-odd") {
    e.spectrum = ssh_spectrum(ssh_params(c, dl, dr, sz.n)).spectrum;
  } else if (m == "unidirectional") {
    e.spectrum = unidirectional_spectrum(c.param("t_l"), c.param("u_l"), dl, sz.n);
  } else if (m == "mixed-longrange") {
    const ModelSpectrum ms = mixed_longrange_spectrum(c.param("t_r"), c.param("u_l"), dl, sz.n);
    e.spectrum = ms.spectrum;
    e.diagnostics = {{"classes", ms.alpha.size()},
                     {"max_class_spread", ms.alpha.max_class_spread},
                     {"generator", ms.alpha.generator}};
  } else if (m == "general-chain") {
    e.spectrum = oracle_only(assemble(c, dl, dr, sz), "no closed form for this chain");
  } else if (is_stacked(c)) {
    const Stacked2DSpec s = stacked_spec(c, dl, sz.n1, sz.n2);
    StackedSpectrum st = m == "stacked-ssh" ? stacked_ssh_spectrum(s, threads)
                         : m == "triangular" ? triangular_spectrum(s, threads)
                                             : stacked_hn_spectrum(s, threads);
    e.spectrum = std::move(st.spectrum);
    e.block = std::move(st.block_of_value);
  } else if (m == "kagome") {
    e.spectrum = oracle_only(assemble(c, dl, dr, sz), "no closed form for this lattice");
  } else if (m == "separable-square") {
    const Spectrum a = hn_spectrum(axis_params(c, "x", dl), sz.n1).spectrum;
    const Spectrum b = hn_spectrum(axis_params(c, "y", separable_delta2(c)), sz.n2).spectrum;
    e.spectrum = separable_square_spectrum(a, b);
  } else {
    throw ConfigError("model: unknown model '" + m + "'");
  }
  return e;
}

Matrix assemble(const RunConfig& c, cplx dl, cplx dr, const Sizes& sz) {
  const std::string& m = c.model;
  if (m == "hn" || m == "hn-general") return hn_matrix(hn_params(c, dl, dr), sz.n);
  if (m == "ssh" || m == "ssh-odd") return ssh_matrix(ssh_params(c, dl, dr, sz.n));
  if (m == "unidirectional")
    return build_chain_matrix(unidirectional_stencil(sz.n, c.param("t_l"), c.param("u_l"), dl));
  if (m == "mixed-longrange")
    return build_chain_matrix(mixed_stencil(sz.n, c.param("t_r"), c.param("u_l"), dl));
  if (m == "general-chain")
    return build_chain_matrix(longrange_stencil(sz.n, c.param("t_l"), c.param("t_r"),
                                                c.param("u_l"), c.param("u_r"), dl));
  if (is_stacked(c)) return build_stacked_matrix(stacked_spec(c, dl, sz.n1, sz.n2));
  if (m == "kagome") {
    const auto [up, low] = direction2_corners(c);
    return kagome_matrix(kagome_params(c), sz.n1, sz.n2, dl, up, low);
  }
  if (m == "separable-square") {
    // Direction 1 is the fast index.
    return kronecker_sum(hn_matrix(axis_params(c, "y", separable_delta2(c)), sz.n2),
                         hn_matrix(axis_params(c, "x", dl), sz.n1));
  }
  throw ConfigError("model: unknown model '" + m + "'");
}

std::optional<BlochSampler> bloch_sampler(const RunConfig& c) {
  const std::string& m = c.model;
  const cplx i1{0.0, 1.0};
  if (m == "hn" || m == "hn-general") {
    const cplx td = c.param("t_d"), tl = c.param("t_l"), tr = c.param("t_r");
    return BlochSampler::scalar(
        [=](double k) { return td + tl * std::exp(i1 * k) + tr * std::exp(-i1 * k); });
  }
  if (m == "ssh" || m == "ssh-odd") {
    const SSHParams p = ssh_params(c, 0.0, 0.0, 2);
    BlochSampler b;
    b.dim = 2;
    b.h = [p, i1](double k) {
      Matrix h(2, 2);
      h(0, 0) = p.v1;
      h(1, 1) = p.v2;
      h(0, 1) = p.t_l1 + p.t_r2 * std::exp(-i1 * k);
      h(1, 0) = p.t_r1 + p.t_l2 * std::exp(i1 * k);
      return h;
    };
    return b;
  }
  LongRangeParams lr;
  if (m == "unidirectional") {
    lr.t_l = c.param("t_l");
    lr.u_l = c.param("u_l");
  } else if (m == "mixed-longrange") {
    lr.t_r = c.param("t_r");
    lr.u_l = c.param("u_l");
  } else if (m == "general-chain") {
    lr = {c.param("t_l"), c.param("t_r"), c.param("u_l"), c.param("u_r")};
  } else {
    return std::nullopt;
  }
  return BlochSampler::scalar([lr](double k) { return bloch_1d(lr, k); });
}

ValidationReport validate(const RunConfig& c, double tolerance) {
  ValidationReport rep;
  Sizes sz = configured_sizes(c);
  if (c.is_2d()) {
    sz.n1 = std::min(sz.n1 > 0 ? sz.n1 : kValidationSize, kValidationSize);
    sz.n2 = std::min(sz.n2 > 0 ? sz.n2 : kValidationSize, kValidationSize);
    if (c.model == "stacked-ssh" && c.n1 % 2 == 0 && sz.n1 % 2 != 0) --sz.n1;
  } else {
    int n = sz.n > 0 ? sz.n : (c.sizes.empty() ? kValidationSize : c.sizes.front());
    n = std::min(n, kValidationSize);
    if (c.model == "ssh-odd" && n % 2 == 0) --n;
    if (c.model == "ssh" && n % 2 != 0) --n;
    if (c.model == "mixed-longrange" || c.model == "unidirectional" ||
        c.model == "general-chain")
      n = std::max(n, 6);
    sz.n = n;
  }

  auto points = c.delta.points();
  if (points.size() > 3) points = {points.front(), points[points.size() / 2], points.back()};
  json checks = json::array();
  for (const auto& [dl, dr] : points) {
    const Evaluation ev = evaluate(c, dl, dr, sz, 1);
    const Spectrum oracle = dense_spectrum(assemble(c, dl, dr, sz)).spectrum;
    const double d = match_spectra(ev.spectrum.values, oracle.values).max_distance;
    const double allowed = relative_allowed(oracle.values, tolerance);
    const bool only = ev.spectrum.provenance == Provenance::oracle || ev.spectrum.fallback;
    rep.oracle_only = rep.oracle_only || only;
    if (d > rep.max_mismatch) rep.max_mismatch = d;
    rep.allowed = std::max(rep.allowed, allowed);
    if (d > allowed) rep.pass = false;
    json entry = {{"delta_l", to_json(dl)}, {"delta_r", to_json(dr)}, {"max_distance", d},
                  {"allowed", allowed},     {"oracle_only", only}};
    if (!ev.spectrum.note.empty()) entry["note"] = ev.spectrum.note;
    if (!ev.diagnostics.empty()) entry["diagnostics"] = ev.diagnostics;
    if (c.model == "mixed-longrange") {
      entry["diagnostics"]["expected_degree"] =
          expected_degree(MixedEquation{sz.n, c.param("t_r"), c.param("u_l"), dl});
      entry["diagnostics"]["triples_within_limit"] =
          ev.diagnostics.value("max_class_spread", 1.0) < kTripleSpreadLimit;
    }
    if (c.model == "general-chain") {
      double worst = 0.0;
      const ChainStencil st = longrange_stencil(sz.n, c.param("t_l"), c.param("t_r"),
                                                c.param("u_l"), c.param("u_r"), dl);
      for (const cplx& v : oracle.values) worst = std::max(worst, verify_generic(st, v));
      entry["boundary_determinant_max"] = worst;
    }
    checks.push_back(entry);
  }
  rep.detail = {{"n", sz.n},
                {"n1", sz.n1},
                {"n2", sz.n2},
                {"checks", checks},
                {"max_mismatch", rep.max_mismatch},
                {"oracle_only", rep.oracle_only},
                {"pass", rep.pass}};
  return rep;
}

RunOutcome run(const RunConfig& c, const RunOptions& opt) {
  RunOutcome out;
  json side;
  side["name"] = c.name;
  side["model"] = c.model;
  side["task"] = to_string(c.task);
  side["config"] = c.raw;
  side["seed"] = effective_seed(c, opt);
  side["results"] = json::object();

  if (c.task == Task::spectrum || c.task == Task::sweep) {
    const ValidationReport v = validate(c, opt.tolerance);
    side["validation"] = v.detail;
    if (!v.pass) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "validation failure: max distance %.3e exceeds %.3e",
                    v.max_mismatch, v.allowed);
      out.exit_code = kExitValidation;
      out.message = buf;
      out.sidecar = side;
      return out;
    }
  }

  std::string csv;
  switch (c.task) {
    case Task::spectrum:
    case Task::sweep: csv = task_spectrum(c, opt, side); break;
    case Task::states: csv = task_states(c, opt, side); break;
    case Task::winding: csv = task_winding(c, opt, side); break;
    case Task::gap: csv = task_gap(c, opt, side); break;
    case Task::envelope: csv = task_envelope(c, opt, side); break;
    case Task::sensitivity: csv = task_sensitivity(c, opt, side); break;
    case Task::balance: csv = task_balance(c, opt, side); break;
  }

  std::filesystem::create_directories(opt.out_dir);
  out.csv = opt.out_dir / (c.name + ".csv");
  out.json = opt.out_dir / (c.name + ".json");
  write_text(out.csv, csv);
  write_text(out.json, side.dump(2) + "\n");
  if (side.contains("validation_failure")) {
    out.exit_code = kExitValidation;
    out.message = side["validation_failure"].get<std::string>();
  }
  out.sidecar = std::move(side);
  return out;
}

}  // namespace nhskin::cli
