#include "cli_commands.hpp"

#include "parspec/contour.hpp"
#include "parspec/counterexample.hpp"
#include "parspec/decay_fit.hpp"
#include "parspec/error.hpp"
#include "parspec/evolution.hpp"
#include "parspec/freq_split.hpp"
#include "parspec/io.hpp"
#include "parspec/norms.hpp"
#include "parspec/perturbation.hpp"
#include "parspec/profile.hpp"
#include "parspec/resolvent_scan.hpp"
#include "parspec/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace parspec::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ojson jnum(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

std::vector<double> xi_grid(double lo, double hi, int count) {
  if (lo > 0.0) return log_space(lo, hi, count);
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = lo + (hi - lo) * i / (count - 1);
  return v;
}

Grid field_grid(const RunConfig& c) {
  if (c.cns.n > 3) raise(ErrorCode::ConfigError, "grid commands need model.n <= 3");
  return Grid::cubic(c.cns.n, c.points, c.length);
}

double rel(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / b.norm(); }

// Relative residual of the characteristic polynomial lambda^2 + a m^2 lambda + c m^2.
double char_residual(Complex l, double a, double c2, double m) {
  const double m2 = m * m;
  const double scale = std::norm(l) + a * m2 * std::abs(l) + c2 * m2;
  return scale > 0.0 ? std::abs(l * l + a * m2 * l + c2 * m2) / scale : 0.0;
}

Trajectory run_evolution(const RunConfig& c, Rng& rng, Field* initial) {
  const Grid g = field_grid(c);
  const bool cns = c.system == "cns";
  const int comps = cns ? c.cns.n + 1 : 1;
  if (c.component < 0 || c.component >= comps) raise(ErrorCode::ConfigError, "evolve.component out of range");
  const double sigma = c.sigma > 0.0 ? c.sigma : std::sqrt(cns ? c.cns.a() : c.dwe.mu);
  Field u0;
  if (c.data == "l1")
    u0 = gaussian_bump(g, sigma, comps, c.component);
  else if (c.data == "lp")
    u0 = lp_proxy(g, sigma, c.data_p, comps, c.component);
  else
    u0 = high_frequency_data(g, c.cutoff, comps, rng());
  if (initial) *initial = u0;

  const std::vector<double> tg = log_time_grid(c.t_first, c.t_end, c.per_decade);
  StepSchedule sch;
  sch.dt0 = c.dt0;
  sch.dt_rel = c.dt_rel;
  sch.dt_max = c.dt_max;
  TrajectoryOptions o;
  ProfileOptions po;
  po.epsilon = c.epsilon;
  if (cns) {
    if (c.epsilon == 0.0) return evolve_cns_linear(c.cns, u0, tg, c.cutoff, o);
    const CnsPerturbation B(c.cns, make_cns_profile(g, po));
    return evolve_cns_perturbed(c.cns, B, u0, tg, c.cutoff, sch, o);
  }
  const Field v0(g, 1);
  if (c.epsilon == 0.0) return evolve_dwe(c.dwe, nullptr, u0, v0, tg, c.cutoff, sch, o);
  const DwePerturbation B(c.dwe, make_dwe_profile(g, po));
  return evolve_dwe(c.dwe, &B, u0, v0, tg, c.cutoff, sch, o);
}

ojson fit_json(const DecayFit& f) { return ojson::parse(to_json(f)); }

}  // namespace

std::vector<std::pair<std::string, std::vector<double>>> parse_csv_columns(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::pair<std::string, std::vector<double>>> cols;
  if (!std::getline(is, line)) raise(ErrorCode::IoError, "empty CSV");
  {
    std::istringstream hs(line);
    std::string name;
    while (std::getline(hs, name, ',')) cols.emplace_back(name, std::vector<double>{});
  }
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(ls, cell, ',')) {
      if (k >= cols.size()) raise(ErrorCode::IoError, "CSV row " + std::to_string(row) + " has too many cells");
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) raise(ErrorCode::IoError, "CSV row " + std::to_string(row) + ": bad number '" + cell + "'");
      cols[k++].second.push_back(v);
    }
    if (k != cols.size()) raise(ErrorCode::IoError, "CSV row " + std::to_string(row) + " has too few cells");
  }
  return cols;
}

Report cmd_spectrum(const RunConfig& c, Rng&) {
  Report r;
  r.command = "spectrum";
  const bool cns = c.system == "cns";
  const double a = cns ? c.cns.a() : c.dwe.mu;
  const double c2 = cns ? c.cns.gamma * c.cns.gamma : c.dwe.mu_prime;
  std::ostringstream os;
  os << "xi,regime";
  if (cns) os << ",lambda1_re";
  os << ",lambda_plus_re,lambda_plus_im,lambda_minus_re,lambda_minus_im,parabola_re,parabola_im,residual\n";
  double worst = 0.0;
  int oscillatory = 0;
  const std::vector<double> xs = xi_grid(c.spectrum_xi_min, c.spectrum_xi_max, c.spectrum_xi_count);
  for (double m : xs) {
    const Spectrum s = cns ? cns_spectrum(c.cns, m) : dwe_spectrum(c.dwe, m);
    const double res = std::max(char_residual(s.lambda_plus, a, c2, m), char_residual(s.lambda_minus, a, c2, m));
    worst = std::max(worst, res);
    oscillatory += s.regime == Regime::Oscillatory;
    os << num(m) << ',' << regime_name(s.regime);
    if (cns) os << ',' << num(s.lambda1->real());
    os << ',' << num(s.lambda_plus.real()) << ',' << num(s.lambda_plus.imag()) << ',' << num(s.lambda_minus.real())
       << ',' << num(s.lambda_minus.imag()) << ',' << num(-0.5 * a * m * m) << ',' << num(std::sqrt(c2) * m) << ','
       << num(res) << '\n';
  }
  r.files.emplace_back("spectrum.csv", os.str());
  r.results["system"] = c.system;
  r.results["rows"] = xs.size();
  r.results["crossover_xi"] = cns ? c.cns.crossover() : c.dwe.crossover();
  r.results["oscillatory_rows"] = oscillatory;
  r.results["max_residual"] = worst;
  r.summary.push_back("spectrum: " + std::to_string(xs.size()) + " rows, max residual " + num(worst));
  return r;
}

Report cmd_resolvent_scan(const RunConfig& c, Rng&) {
  Report r;
  r.command = "resolvent-scan";
  const bool cns = c.system == "cns";
  const double rinf = cns ? default_r_infty(c.cns) : default_r_infty(c.dwe);
  const ScanGrid grid = make_scan_grid(rinf, c.scan_n_xi, c.scan_n_a, c.scan_n_re, c.scan_n_im);
  const BoundScanReport rep =
      cns ? scan_cns_bounds(c.cns, c.scan_c0, grid, rinf) : scan_dwe_bounds(c.dwe, c.scan_c0, grid, rinf);
  std::ostringstream os;
  os << "bound_id,family,c0,a,xi_mag,ratio\n";
  for (const ScanRow& row : rep.rows)
    os << row.bound << ',' << family_name(row.family) << ',' << num(row.c0) << ',' << num(row.a) << ','
       << num(row.xi) << ',' << num(row.ratio) << '\n';
  r.files.emplace_back("resolvent_scan.csv", os.str());

  r.results["system"] = rep.system;
  r.results["n"] = rep.n;
  r.results["r_infty"] = rep.r_infty;
  r.results["conforming"] = rep.conforming;
  r.results["warnings"] = rep.warnings;
  r.results["spectral_margin"] = rep.spectral_margin;
  ojson bounds = ojson::array();
  for (std::size_t b = 0; b < rep.bound_ids.size(); ++b) {
    ojson per_c0 = ojson::array();
    for (std::size_t k = 0; k < rep.c0_values.size(); ++k) per_c0.push_back(jnum(rep.constants[b][k]));
    bounds.push_back({{"bound", rep.bound_ids[b]},
                      {"constant", jnum(rep.constant(b))},
                      {"c0_variation", jnum(rep.c0_variation(b))},
                      {"by_c0", per_c0}});
  }
  r.results["c0"] = rep.c0_values;
  r.results["bounds"] = bounds;
  ojson recs = ojson::array();
  for (const BoundRecord& b : rep.records)
    recs.push_back({{"bound", b.bound},
                    {"family", family_name(b.family)},
                    {"c0", b.c0},
                    {"sup", jnum(b.sup)},
                    {"argmax_xi", b.argmax_xi},
                    {"argmax_lambda", {b.argmax_lambda.real(), b.argmax_lambda.imag()}},
                    {"evaluated", b.evaluated},
                    {"skipped", b.skipped}});
  r.results["records"] = recs;
  for (std::size_t b = 0; b < rep.bound_ids.size(); ++b)
    r.summary.push_back(rep.bound_ids[b] + ": constant " + num(rep.constant(b)) + ", c0 variation " +
                        num(rep.c0_variation(b)));
  return r;
}

Report cmd_evolve(const RunConfig& c, Rng& rng) {
  Report r;
  r.command = "evolve";
  Field u0;
  const Trajectory tr = run_evolution(c, rng, &u0);
  r.files.emplace_back("trajectory.csv", to_csv(tr));
  r.results = ojson::parse(to_json(tr));
  r.summary.push_back("evolve: " + tr.system + ", " + std::to_string(tr.t.size()) + " samples, " +
                      std::to_string(tr.steps) + " steps");
  for (const auto& w : tr.warnings) r.summary.push_back("warning: " + w);
  r.fields.emplace_back("initial.bin", std::move(u0));
  return r;
}

Report cmd_decay_fit(const RunConfig& c, Rng& rng) {
  Report r;
  r.command = "decay-fit";
  std::vector<std::pair<std::string, Series>> series;
  if (c.fit_input.empty()) {
    const Trajectory tr = run_evolution(c, rng, nullptr);
    for (const auto& name : c.fit_series) series.emplace_back(name, tr.series(name));
    r.results["source"] = "evolve";
  } else {
    const auto cols = parse_csv_columns(read_file(c.fit_input));
    auto find = [&](const std::string& n) -> const std::vector<double>& {
      for (const auto& col : cols)
        if (col.first == n) return col.second;
      raise(ErrorCode::ConfigError, "column '" + n + "' not found in " + c.fit_input);
    };
    const auto& t = find("t");
    for (const auto& name : c.fit_series) {
      const auto& v = find(name);
      Series s;
      for (std::size_t k = 0; k < t.size(); ++k) s.emplace_back(t[k], v[k]);
      series.emplace_back(name, s);
    }
    r.results["source"] = c.fit_input;
  }
  std::ostringstream os;
  os << "series,t_lo,t_hi,samples,exponent,stderr,intercept,r2,curvature\n";
  ojson fits = ojson::object();
  for (const auto& [name, s] : series) {
    const DecayFit f = decay_fit(s, c.fit_t_lo, c.fit_t_hi);
    fits[name] = fit_json(f);
    os << name << ',' << num(f.t_lo) << ',' << num(f.t_hi) << ',' << f.samples << ',' << num(f.exponent) << ','
       << num(f.stderr_exponent) << ',' << num(f.intercept) << ',' << num(f.r2) << ',' << num(f.curvature) << '\n';
    r.summary.push_back(name + ": exponent " + num(f.exponent) + " (R^2 " + num(f.r2) + ")");
  }
  r.results["fits"] = fits;
  r.files.emplace_back("decay_fit.csv", os.str());
  return r;
}

Report cmd_norms(const RunConfig& c, Rng& rng) {
  Report r;
  r.command = "norms";
  const Grid g = field_grid(c);
  Field f;
  if (c.norms_field == "gaussian") {
    f = gaussian_bump(g, c.norms_sigma, 1, 0);
  } else if (c.norms_field == "power") {
    f = Field(g, 1);
    const double core = g.spacing(0);
    std::size_t idx = 0;
    for (int i = 0; i < g.points[0]; ++i)
      for (int j = 0; j < g.points[1]; ++j)
        for (int k = 0; k < g.points[2]; ++k, ++idx) {
          const double x = g.coord(0, i), y = g.dim > 1 ? g.coord(1, j) : 0.0, z = g.dim > 2 ? g.coord(2, k) : 0.0;
          const double rr = std::sqrt(x * x + y * y + z * z);
          f[0][idx] = periodizing_cutoff(rr, c.length) * std::pow(std::max(rr, core), -c.norms_power);
        }
  } else {
    SpectralField s = random_band_limited(g, 1, 0.5 * g.nyquist(), rng);
    drop_nyquist(s);
    f = to_physical(s);
  }
  const SpectralField fs = to_spectral(f);
  ojson lp = ojson::object(), lor = ojson::array();
  for (double p : c.norms_lp) {
    lp[num(p)] = lp_norm(f, p);
    for (double q : c.norms_lorentz_q) lor.push_back({{"p", p}, {"q", jnum(q)}, {"value", lorentz_norm(f, {p, q})}});
  }
  const double phys = physical_l2_sq(f), spec = spectral_l2_sq(fs);
  r.results["field"] = c.norms_field;
  r.results["grid"] = describe(g);
  r.results["lp"] = lp;
  r.results["lorentz"] = lor;
  r.results["plancherel_rel_error"] = std::abs(phys - spec) / phys;
  r.results["low_l2"] = std::sqrt(physical_l2_sq(project_low(f, c.cutoff)));
  r.results["high_l2"] = std::sqrt(physical_l2_sq(project_high(f, c.cutoff)));
  r.results["homogeneous_sobolev"] = {{"s", c.norms_sobolev_s}, {"value", homogeneous_sobolev_norm(fs, c.norms_sobolev_s)}};
  const BesovProfile bp = besov_profile(fs, c.norms_besov_s);
  ojson besov = {{"s", c.norms_besov_s}, {"dyadic", bp.value}, {"j_at_sup", bp.j_at_sup}};
  if (c.norms_besov_s > 0.0 && c.norms_besov_s < 1.0) besov["finite_difference"] = besov_halfnorm_fd(f, c.norms_besov_s);
  r.results["besov"] = besov;
  const PoincareReport pc = poincare_check(c.cutoff, g, c.norms_trials, rng());
  r.results["poincare"] = {{"sup_ratio", pc.sup_ratio},
                           {"bound", pc.bound},
                           {"witness_xi", pc.witness_xi},
                           {"witness_ratio", pc.witness_ratio},
                           {"all_within_bound", pc.all_within_bound}};
  std::ostringstream os;
  os << "j,block_l2\n";
  for (std::size_t i = 0; i < bp.j.size(); ++i) os << bp.j[i] << ',' << num(bp.block_l2[i]) << '\n';
  r.files.emplace_back("besov_profile.csv", os.str());
  r.summary.push_back("norms: " + c.norms_field + " on " + describe(g) + ", Besov " + num(bp.value));
  return r;
}

Report cmd_counterexample(const RunConfig& c, Rng&) {
  Report r;
  r.command = "counterexample";
  CounterexampleSpec s;
  s.N = *std::max_element(c.ce_N.begin(), c.ce_N.end());
  s.L = c.ce_L;
  s.psi_radius = c.ce_radius;
  s.amplitude_power = c.ce_amplitude_power;
  s.validate();
  const Grid g = counterexample_grid(s.N, s, c.ce_steps_per_L, c.ce_transverse);
  const CounterexampleStudy st = fN_study(s, c.ce_N, g);
  r.files.emplace_back("counterexample.csv", to_csv(st));
  r.results["study"] = ojson::parse(to_json(st));
  r.summary.push_back("counterexample: growth exponent " + num(st.growth.exponent) + ", weak-L3 spread " +
                      num(st.lorentz_spread));
  if (c.ce_weighted) {
    const WeightedProfileReport w = weighted_profile_in_besov(
        WeightedProfileSpec{c.ce_M1, c.ce_M2}, Grid::cubic(3, c.ce_weighted_points, c.ce_weighted_length));
    r.results["weighted_profile"] = {{"half_norm", w.half_norm},
                                     {"small_shift_sup", w.small_shift_sup},
                                     {"large_shift_sup", w.large_shift_sup},
                                     {"grad_l2", w.grad_l2},
                                     {"m1", w.m1},
                                     {"m2", w.m2},
                                     {"constant", w.constant},
                                     {"refined_half_norm", w.refined_half_norm},
                                     {"refinement_change", w.refinement_change}};
    r.summary.push_back("weighted profile: half norm " + num(w.half_norm) + ", refinement change " +
                        num(w.refinement_change));
  }
  return r;
}

Report cmd_contour_check(const RunConfig& c, Rng&) {
  Report r;
  r.command = "contour-check";
  const bool cns = c.system == "cns";
  const int n = cns ? c.cns.n : c.dwe.n;
  const double rinf = cns ? default_r_infty(c.cns) : default_r_infty(c.dwe);
  const std::vector<double> xs =
      c.contour_xi_count == 1 ? std::vector<double>{rinf} : log_space(1e-3, rinf, c.contour_xi_count);
  std::ostringstream os;
  os << "t,xi,rel_error,nodes,doublings\n";
  double worst = 0.0;
  ojson per_t = ojson::array();
  for (double t : c.contour_times) {
    ContourSpec s = c.contour;
    s.t = t;
    double w = 0.0;
    for (double m : xs) {
      const FreqVector xi = FreqVector::along_axis(n, m);
      const ContourResult cr = cns ? semigroup_via_contour(c.cns, xi, t, s) : semigroup_via_contour(c.dwe, xi, t, s);
      const double e = rel(cr.value, cns ? cns_propagator(c.cns, xi, t) : dwe_propagator(c.dwe, xi, t));
      w = std::max(w, e);
      os << num(t) << ',' << num(m) << ',' << num(e) << ',' << cr.nodes << ',' << cr.doublings << '\n';
    }
    ojson entry = {{"t", t}, {"max_rel_error", w}};
    if (cns) {
      double factor = INFINITY;
      for (double m : {xs.front(), xs[xs.size() / 2], xs.back()})
        factor = std::min(factor, contour_convergence(c.cns, FreqVector::along_axis(n, m), t, s, 4).min_factor);
      entry["min_doubling_factor"] = jnum(factor);
    }
    per_t.push_back(entry);
    worst = std::max(worst, w);
  }
  r.files.emplace_back("contour_check.csv", os.str());
  r.results["system"] = c.system;
  r.results["r_infty"] = rinf;
  r.results["times"] = per_t;
  r.results["max_rel_error"] = worst;
  r.summary.push_back("contour-check: max relative error " + num(worst));
  return r;
}

Report run_command(const RunConfig& c) {
  Rng rng(c.seed);
  if (c.command == "spectrum") return cmd_spectrum(c, rng);
  if (c.command == "resolvent-scan") return cmd_resolvent_scan(c, rng);
  if (c.command == "evolve") return cmd_evolve(c, rng);
  if (c.command == "decay-fit") return cmd_decay_fit(c, rng);
  if (c.command == "norms") return cmd_norms(c, rng);
  if (c.command == "counterexample") return cmd_counterexample(c, rng);
  if (c.command == "contour-check") return cmd_contour_check(c, rng);
  raise(ErrorCode::ConfigError, "no command given");
}

}  // namespace parspec::cli
