#include "parspec/resolvent_scan.hpp"

#include "parspec/error.hpp"
#include "parspec/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace parspec {

namespace {

constexpr double kAdmissibleGap = 1e-8;

struct PointResult {
  std::vector<double> sup;
  std::vector<double> arg_xi;
  std::vector<int> arg_basis;
  std::vector<double> case_a, case_b;
  long long evaluated = 0;
  long long skipped = 0;
  double margin = std::numeric_limits<double>::infinity();
};

// eval(lambda, mag, basis, ratios) writes one ratio per bound (negative = not applicable)
// and returns the distance from lambda to the spectrum at |xi| = mag.
template <class Eval>
std::vector<BoundRecord> scan_impl(const std::vector<std::string>& ids, SetFamily family, double c0,
                                   const std::vector<Complex>& pts, const std::vector<double>& xi_mags,
                                   int nbasis, double case_speed, Eval&& eval, std::vector<ScanRow>* rows,
                                   const std::vector<double>* row_keys, Exec ex) {
  const std::size_t nb = ids.size();
  std::vector<PointResult> res(pts.size());
  const long long np = static_cast<long long>(pts.size());
#pragma omp parallel for schedule(dynamic, 4) if (ex == Exec::Parallel)
  for (long long ip = 0; ip < np; ++ip) {
    PointResult& r = res[static_cast<std::size_t>(ip)];
    r.sup.assign(nb, 0.0);
    r.arg_xi.assign(nb, 0.0);
    r.arg_basis.assign(nb, -1);
    r.case_a.assign(nb, 0.0);
    r.case_b.assign(nb, 0.0);
    std::vector<double> ratios(nb);
    const Complex lam = pts[static_cast<std::size_t>(ip)];
    const double al = std::abs(lam);
    for (double mag : xi_mags) {
      const double edge = case_speed * mag;
      const bool case_a = al < edge / std::sqrt(2.0) || al > std::sqrt(2.0) * edge;
      bool any = false;
      for (int k = 0; k < nbasis; ++k) {
        const double dist = eval(lam, mag, k, ratios.data());
        if (k == 0) {
          if (dist < kAdmissibleGap) {
            ++r.skipped;
            break;
          }
          r.margin = std::min(r.margin, dist);
        }
        any = true;
        for (std::size_t b = 0; b < nb; ++b) {
          const double v = ratios[b];
          if (!(v >= 0.0)) continue;
          if (v > r.sup[b]) {
            r.sup[b] = v;
            r.arg_xi[b] = mag;
            r.arg_basis[b] = k;
          }
          double& cs = case_a ? r.case_a[b] : r.case_b[b];
          cs = std::max(cs, v);
        }
      }
      if (any) ++r.evaluated;
    }
  }

  std::vector<BoundRecord> out(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    out[b].bound = ids[b];
    out[b].family = family;
    out[b].c0 = c0;
    out[b].spectral_margin = std::numeric_limits<double>::infinity();
  }
  // serial combine in point order; ties keep the first point
  std::map<double, std::vector<ScanRow>> grouped;
  for (std::size_t ip = 0; ip < pts.size(); ++ip) {
    const PointResult& r = res[ip];
    for (std::size_t b = 0; b < nb; ++b) {
      BoundRecord& o = out[b];
      if (r.sup[b] > o.sup) {
        o.sup = r.sup[b];
        o.argmax_xi = r.arg_xi[b];
        o.argmax_lambda = pts[ip];
        o.argmax_basis = r.arg_basis[b];
      }
      o.case_a_sup = std::max(o.case_a_sup, r.case_a[b]);
      o.case_b_sup = std::max(o.case_b_sup, r.case_b[b]);
      o.evaluated += r.evaluated;
      o.skipped += r.skipped;
      o.spectral_margin = std::min(o.spectral_margin, r.margin);
      if (rows && row_keys) {
        const double key = (*row_keys)[ip];
        auto& vec = grouped[key];
        if (vec.size() < nb) vec.resize(nb);
        ScanRow& row = vec[b];
        row.bound = ids[b];
        row.family = family;
        row.c0 = c0;
        row.a = key;
        if (r.sup[b] > row.ratio) {
          row.ratio = r.sup[b];
          row.xi = r.arg_xi[b];
        }
      }
    }
  }
  if (rows)
    for (std::size_t b = 0; b < nb; ++b)
      for (auto& [key, vec] : grouped) rows->push_back(vec[b]);
  return out;
}

void check_inputs(const std::vector<double>& xi_mags, double r_infty) {
  require(r_infty > 0.0 && std::isfinite(r_infty), "r_infty must be positive");
  require(!xi_mags.empty(), "xi grid must be non-empty");
  for (double m : xi_mags) require(m > 0.0 && m <= r_infty * (1.0 + 1e-12), "xi magnitudes must lie in (0, r_infty]");
}

std::vector<double> row_keys_for(const ResolventSetSpec& set, const std::vector<Complex>& pts) {
  std::vector<double> keys(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    keys[i] = set.family == SetFamily::R2 ? pts[i].real() : set.a_grid[i];
  return keys;
}

template <class ScanSet>
BoundScanReport assemble(const std::string& system, int n, std::vector<std::string> ids,
                         const std::vector<double>& c0_values, const ScanGrid& grid, double r_infty,
                         ScanSet&& scan_set) {
  require(!c0_values.empty(), "c0 sweep must be non-empty");
  BoundScanReport rep;
  rep.system = system;
  rep.n = n;
  rep.r_infty = r_infty;
  rep.bound_ids = ids;
  rep.c0_values = c0_values;
  rep.constants.assign(ids.size(), std::vector<double>(c0_values.size(), 0.0));
  ResolventSetSpec r2{SetFamily::R2, 0.0, {}, grid.r2};
  std::vector<BoundRecord> r2rec = scan_set(r2, &rep.rows);
  for (std::size_t k = 0; k < c0_values.size(); ++k) {
    for (SetFamily fam : {SetFamily::R1Plus, SetFamily::R1Minus}) {
      ResolventSetSpec s{fam, c0_values[k], grid.a, {}};
      std::vector<BoundRecord> rec = scan_set(s, &rep.rows);
      for (std::size_t b = 0; b < ids.size(); ++b) {
        rep.constants[b][k] = std::max(rep.constants[b][k], rec[b].sup);
        rep.records.push_back(rec[b]);
      }
    }
    for (std::size_t b = 0; b < ids.size(); ++b) rep.constants[b][k] = std::max(rep.constants[b][k], r2rec[b].sup);
  }
  for (auto& r : r2rec) rep.records.push_back(r);
  rep.spectral_margin = std::numeric_limits<double>::infinity();
  for (auto& r : rep.records) rep.spectral_margin = std::min(rep.spectral_margin, r.spectral_margin);
  return rep;
}

}  // namespace

const char* family_name(SetFamily f) {
  switch (f) {
    case SetFamily::R1Plus: return "R1_plus";
    case SetFamily::R1Minus: return "R1_minus";
    case SetFamily::R2: return "R2";
  }
  return "?";
}

std::vector<Complex> ResolventSetSpec::points() const {
  std::vector<Complex> pts;
  if (family == SetFamily::R2) {
    for (Complex l : lambda_grid) {
      require(l.real() > 0.0, "R2 points need a positive real part");
      pts.push_back(l);
    }
    return pts;
  }
  require(c0 > 0.0, "c0 must be positive");
  const double sign = family == SetFamily::R1Plus ? 1.0 : -1.0;
  for (double a : a_grid) {
    require(a > 0.0, "a grid must be positive");
    pts.emplace_back(-a * a, sign * (a + c0));
  }
  return pts;
}

std::vector<double> log_space(double lo, double hi, int count) {
  require(lo > 0.0 && hi >= lo && count >= 1, "log_space: bad range");
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int i = 0; i < count; ++i) v[i] = std::exp(l0 + (l1 - l0) * i / (count - 1));
  v.front() = lo;
  v.back() = hi;
  return v;
}

ScanGrid make_scan_grid(double r_infty, int n_xi, int n_a, int n_re, int n_im) {
  ScanGrid g;
  g.xi = log_space(1e-4, r_infty, n_xi);
  g.a = log_space(1e-4, 10.0, n_a);
  const std::vector<double> re = log_space(1e-4, 10.0, n_re);
  const std::vector<double> im = log_space(1e-4, 10.0, n_im);
  for (double x : re) {
    for (auto it = im.rbegin(); it != im.rend(); ++it) g.r2.emplace_back(x, -*it);
    g.r2.emplace_back(x, 0.0);
    for (double y : im) g.r2.emplace_back(x, y);
  }
  return g;
}

double default_r_infty(const ModelParams& p) {
  return std::min(1.0 / (2.0 * std::sqrt(2.0) * p.gamma), 0.9 * p.crossover());
}

double default_r_infty(const DweParams& p) {
  return std::min(1.0 / (2.0 * std::sqrt(2.0) * std::sqrt(p.mu_prime)), 0.9 * p.crossover());
}

double BoundScanReport::constant(std::size_t b) const {
  return *std::max_element(constants.at(b).begin(), constants.at(b).end());
}

double BoundScanReport::c0_variation(std::size_t b) const {
  const auto& c = constants.at(b);
  const double lo = *std::min_element(c.begin(), c.end());
  const double hi = *std::max_element(c.begin(), c.end());
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

double BoundScanReport::family_sup(std::size_t b, SetFamily f) const {
  double s = 0.0;
  for (const auto& r : records)
    if (r.bound == bound_ids.at(b) && r.family == f) s = std::max(s, r.sup);
  return s;
}

std::vector<std::string> cns_bound_ids() { return {"cns_lambda_xi", "cns_xi2"}; }

std::vector<std::string> dwe_bound_ids() {
  return {"dwe_u_lambda_xi2", "dwe_u_xi3", "dwe_v_lambda", "dwe_v_xi2"};
}

std::vector<BoundRecord> scan_cns_set(const ModelParams& p, const ResolventSetSpec& set,
                                      const std::vector<double>& xi_mags, double r_infty,
                                      std::vector<ScanRow>* rows, Exec ex) {
  p.validate();
  check_inputs(xi_mags, r_infty);
  const std::vector<Complex> pts = set.points();
  const std::vector<double> keys = row_keys_for(set, pts);
  const int n = p.n;
  auto eval = [&](Complex lam, double mag, int k, double* ratios) {
    double xi[16] = {0.0};
    Complex f[17] = {0.0};
    Complex out[17];
    xi[0] = mag;
    f[k] = 1.0;
    const Spectrum s = cns_spectrum(p, mag);
    double dist = std::min(std::abs(lam - s.lambda_plus), std::abs(lam - s.lambda_minus));
    if (n >= 2) dist = std::min(dist, std::abs(lam - *s.lambda1));
    if (dist < kAdmissibleGap) return dist;
    cns_resolvent_mode(p, lam, xi, f, out);
    double w2 = 0.0;
    for (int i = 1; i <= n; ++i) w2 += std::norm(out[i]);
    const double num = std::abs(out[0]) + std::sqrt(w2);
    ratios[0] = std::abs(lam) * mag * num;
    ratios[1] = mag * mag * num;
    return dist;
  };
  require(n <= 15, "scan supports n <= 15");
  // transverse directions are equivalent under rotation about xi; one suffices
  const int nbasis = std::min(n + 1, 3);
  return scan_impl(cns_bound_ids(), set.family, set.c0, pts, xi_mags, nbasis, p.gamma, eval, rows, &keys, ex);
}

std::vector<BoundRecord> scan_dwe_set(const DweParams& p, const ResolventSetSpec& set,
                                      const std::vector<double>& xi_mags, double r_infty,
                                      std::vector<ScanRow>* rows, Exec ex) {
  p.validate();
  check_inputs(xi_mags, r_infty);
  const std::vector<Complex> pts = set.points();
  const std::vector<double> keys = row_keys_for(set, pts);
  auto eval = [&](Complex lam, double mag, int k, double* ratios) {
    const Spectrum s = dwe_spectrum(p, mag);
    const double dist = std::min(std::abs(lam - s.lambda_plus), std::abs(lam - s.lambda_minus));
    if (dist < kAdmissibleGap) return dist;
    const Complex d = (lam - s.lambda_plus) * (lam - s.lambda_minus);
    const Complex f11 = k == 0 ? 1.0 : 0.0;
    const Complex f12 = k == 1 ? 1.0 : 0.0;
    const Complex u = f12 / d;
    const Complex v = -f11 + lam * f12 / d;
    const double al = std::abs(lam), m2 = mag * mag;
    const double a11 = std::abs(f11), a12 = std::abs(f12);
    ratios[0] = a12 > 0.0 ? al * m2 * std::abs(u) / a12 : -1.0;
    ratios[1] = a12 > 0.0 ? m2 * mag * std::abs(u) / a12 : -1.0;
    ratios[2] = std::abs(v) / (a11 + a12 / al);
    ratios[3] = m2 * std::abs(v) / (a11 + a12);
    return dist;
  };
  return scan_impl(dwe_bound_ids(), set.family, set.c0, pts, xi_mags, 2, std::sqrt(p.mu_prime), eval, rows, &keys,
                   ex);
}

BoundScanReport scan_cns_bounds(const ModelParams& p, const std::vector<double>& c0_values, const ScanGrid& grid,
                                double r_infty, Exec ex) {
  BoundScanReport rep = assemble("cns", p.n, cns_bound_ids(), c0_values, grid, r_infty,
                                 [&](const ResolventSetSpec& s, std::vector<ScanRow>* rows) {
                                   return scan_cns_set(p, s, grid.xi, r_infty, rows, ex);
                                 });
  if (!p.strong_viscosity()) {
    rep.conforming = false;
    rep.warnings.push_back("RegimeViolation: alpha + beta >= 5 gamma^2 with gamma >= 1 does not hold");
  }
  if (r_infty > 1.0 / (2.0 * std::sqrt(2.0) * p.gamma) || r_infty >= p.crossover()) {
    rep.conforming = false;
    rep.warnings.push_back("RegimeViolation: r_infty exceeds min(1/(2 sqrt2 gamma), crossover)");
  }
  return rep;
}

BoundScanReport scan_dwe_bounds(const DweParams& p, const std::vector<double>& c0_values, const ScanGrid& grid,
                                double r_infty, Exec ex) {
  BoundScanReport rep = assemble("dwe", p.n, dwe_bound_ids(), c0_values, grid, r_infty,
                                 [&](const ResolventSetSpec& s, std::vector<ScanRow>* rows) {
                                   return scan_dwe_set(p, s, grid.xi, r_infty, rows, ex);
                                 });
  if (!p.strong_damping()) {
    rep.conforming = false;
    rep.warnings.push_back("RegimeViolation: mu >= 5 mu' with mu' >= 1 does not hold");
  }
  if (r_infty >= p.crossover()) {
    rep.conforming = false;
    rep.warnings.push_back("RegimeViolation: r_infty exceeds the crossover frequency");
  }
  return rep;
}

double sectorial_constant(double delta, int n_angle, int n_ratio) {
  require(delta > 0.0 && delta < kPi, "sector half-opening must be in (0, pi)");
  const double theta_max = kPi - delta;
  double sup = 0.0;
  for (int i = 0; i < n_angle; ++i) {
    const double th = -theta_max + 2.0 * theta_max * i / (n_angle - 1);
    for (int j = 0; j < n_ratio; ++j) {
      const double r = std::exp(-6.0 + 12.0 * j / (n_ratio - 1));  // |lambda| / m
      const Complex lam = std::polar(r, th);
      sup = std::max(sup, (r + 1.0) / std::abs(lam + 1.0));
    }
  }
  return sup;
}

}  // namespace parspec
