// Acceptance suite: ten numbered criteria, one PASS/FAIL line each.
// Tolerances and wall-clock limits are fixed below. The process exits 0 unless
// something crashes; --strict turns any FAIL into exit code 1.

#include "cli_app.hpp"
#include "oracles.hpp"
#include "parspec/config.hpp"
#include "parspec/contour.hpp"
#include "parspec/counterexample.hpp"
#include "parspec/error.hpp"
#include "parspec/evolution.hpp"
#include "parspec/freq_split.hpp"
#include "parspec/io.hpp"
#include "parspec/norms.hpp"
#include "parspec/perturbation.hpp"
#include "parspec/profile.hpp"
#include "parspec/resolvent.hpp"
#include "parspec/resolvent_scan.hpp"
#include "parspec/symbol.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace parspec;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // records a named check; keeps the first failure visible in the detail line
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << " first failure: " << what << ";";
      pass = false;
    }
  }
};

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", v);
  return b;
}

std::string fix(double v, int digits = 4) {
  char b[32];
  std::snprintf(b, sizeof b, "%.*f", digits, v);
  return b;
}

double rel(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / std::max(b.norm(), 1e-300); }

// ---------------------------------------------------------------- criterion 1
constexpr double kAlgebraTol = 1e-10;

void criterion1(Outcome& o) {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double w_sum = 0, w_prod = 0, w_recon = 0, w_prop = 0;
  int done = 0, skipped = 0;
  while (done < 10000) {
    ModelParams p;
    p.n = 1 + static_cast<int>(rng() % 5);
    p.gamma = 1.0 + u01(rng);
    const double a = 5.0 * p.gamma * p.gamma * (1.0 + 2.0 * u01(rng));
    p.alpha = a * (0.05 + 0.9 * u01(rng));
    p.beta = a - p.alpha;
    const double mag = std::pow(10.0, -3.0 + 3.5 * u01(rng));
    const double t = std::pow(10.0, -2.0 + 3.0 * u01(rng));
    if (!p.strong_viscosity() || cns_is_degenerate(p, mag)) {
      ++skipped;
      continue;
    }
    const FreqVector xi(oracle::scaled(oracle::random_direction(rng, p.n), mag));
    const auto [s, pr] = cns_eigensystem(p, xi);
    const int m = p.n + 1;
    const CMatrix* ps[3] = {&pr.pi1, &pr.pi_plus, &pr.pi_minus};
    const double scale = pr.pi1.norm() + pr.pi_plus.norm() + pr.pi_minus.norm();
    w_sum = std::max(w_sum, (pr.pi1 + pr.pi_plus + pr.pi_minus - CMatrix::Identity(m, m)).norm() / scale);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const CMatrix expect = i == j ? *ps[i] : CMatrix::Zero(m, m);
        w_prod = std::max(w_prod, ((*ps[i]) * (*ps[j]) - expect).norm() / (ps[i]->norm() * ps[j]->norm()));
      }
    const CMatrix symbol = cns_symbol(p, xi);
    const CMatrix recon = *s.lambda1 * pr.pi1 + s.lambda_plus * pr.pi_plus + s.lambda_minus * pr.pi_minus;
    w_recon = std::max(w_recon, rel(recon, -symbol));
    w_prop = std::max(w_prop, rel(cns_propagator(p, xi, t), oracle::taylor_expm(-t * symbol)));
    ++done;
  }
  o.require(w_sum <= kAlgebraTol, "sum of projections");
  o.require(w_prod <= kAlgebraTol, "projection products");
  o.require(w_recon <= kAlgebraTol, "spectral reconstruction");
  o.require(w_prop <= kAlgebraTol, "propagator vs exponential");
  o.detail << " samples " << done << " (degenerate skipped " << skipped << "), sum " << sci(w_sum) << ", products "
           << sci(w_prod) << ", reconstruction " << sci(w_recon) << ", propagator " << sci(w_prop);
}

// ---------------------------------------------------------------- criterion 2
constexpr double kResolventTol = 1e-10;

CMatrix shifted(CMatrix a, Complex lam) {
  for (int i = 0; i < a.rows(); ++i) a(i, i) += lam;
  return a;
}

CVector random_cvec(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> g;
  CVector v(m);
  for (int i = 0; i < m; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

void criterion2(Outcome& o) {
  std::mt19937_64 rng(2002);
  std::uniform_real_distribution<double> u01(0.0, 1.0), box(-3.0, 3.0);
  double w_cns = 0, w_dwe = 0, w_dwe1 = 0;
  int cns_done = 0, dwe_done = 0;
  while (cns_done < 10000) {
    ModelParams p{1 + static_cast<int>(rng() % 5), 0.5 + 2.0 * u01(rng), 4.0 * u01(rng), 1.0 + u01(rng)};
    const double mag = std::pow(10.0, -4.0 + 5.0 * u01(rng));
    if (cns_is_degenerate(p, mag)) continue;
    const FreqVector xi(oracle::scaled(oracle::random_direction(rng, p.n), mag));
    const Complex lam(box(rng), box(rng));
    const CVector f = random_cvec(rng, p.n + 1);
    const CVector expect = oracle::gauss_solve(shifted(cns_symbol(p, xi), lam), f);
    w_cns = std::max(w_cns, (cns_resolvent_apply(p, lam, xi, f) - expect).norm() / expect.norm());
    ++cns_done;
  }
  while (dwe_done < 10000) {
    DweParams p{1 + static_cast<int>(rng() % 5), 0.5 + 6.0 * u01(rng), 0.5 + 2.0 * u01(rng)};
    const double mag = std::pow(10.0, -4.0 + 5.0 * u01(rng));
    if (dwe_is_degenerate(p, mag)) continue;
    const FreqVector xi(oracle::scaled(oracle::random_direction(rng, p.n), mag));
    const Complex lam(box(rng), box(rng));
    const CVector f = random_cvec(rng, 2);
    // eliminated pair: lambda u - v = f1, (lambda^2 + mu m^2 lambda + mu' m^2) u = f2
    const double m2 = mag * mag;
    CMatrix sys(2, 2);
    sys << lam, -1.0, lam * lam + p.mu * m2 * lam + p.mu_prime * m2, 0.0;
    const CVector expect = oracle::gauss_solve(sys, f);
    w_dwe = std::max(w_dwe, (dwe_resolvent_apply(p, lam, xi, f) - expect).norm() / expect.norm());
    const CVector e1 = oracle::gauss_solve(shifted(dwe_symbol(p, xi), lam), f);
    w_dwe1 = std::max(w_dwe1, (dwe_first_order_resolvent(p, lam, xi, f) - e1).norm() / e1.norm());
    ++dwe_done;
  }
  o.require(w_cns <= kResolventTol, "compressible resolvent");
  o.require(w_dwe <= kResolventTol, "damped-wave resolvent");
  o.require(w_dwe1 <= kResolventTol, "damped-wave first-order resolvent");
  o.detail << " inputs " << cns_done << " + " << dwe_done << ", max rel error cns " << sci(w_cns) << ", dwe "
           << sci(w_dwe) << ", dwe first-order " << sci(w_dwe1);
}

// ---------------------------------------------------------------- criterion 3
constexpr double kC0Variation = 2.0;
constexpr double kRefinementChange = 0.10;

void check_scan(Outcome& o, const std::string& label, const BoundScanReport& base, const BoundScanReport& fine) {
  for (std::size_t b = 0; b < base.bound_ids.size(); ++b) {
    const double c = base.constant(b), cf = fine.constant(b);
    const double change = std::abs(cf - c) / c;
    const std::string id = label + " " + base.bound_ids[b];
    o.require(std::isfinite(c) && std::isfinite(cf) && c > 0.0, id + " finite");
    o.require(base.c0_variation(b) < kC0Variation && fine.c0_variation(b) < kC0Variation, id + " c0 variation");
    o.require(change < kRefinementChange, id + " refinement");
    o.detail << " " << id << " C=" << fix(c) << " c0x" << fix(base.c0_variation(b), 3) << " ref " << fix(100 * change, 2)
             << "%;";
  }
  o.require(base.conforming && fine.conforming, label + " parameters conform");
}

void criterion3(Outcome& o) {
  const std::vector<double> c0{0.1, 1.0, 10.0};
  // the module's default density, then every axis doubled
  auto grid = [](double r, int k) { return make_scan_grid(r, 200 * k, 200 * k, 100 * k, 100 * k); };
  const ModelParams cp{3, 1.0, 4.0, 1.0};
  const double rc = default_r_infty(cp);
  check_scan(o, "cns", scan_cns_bounds(cp, c0, grid(rc, 1), rc), scan_cns_bounds(cp, c0, grid(rc, 2), rc));
  for (int n : {3, 5}) {
    const DweParams dp{n, 5.0, 1.0};
    const double rd = default_r_infty(dp);
    check_scan(o, "dwe(n=" + std::to_string(n) + ")", scan_dwe_bounds(dp, c0, grid(rd, 1), rd),
               scan_dwe_bounds(dp, c0, grid(rd, 2), rd));
  }
  // Not gated: on R2 the v bound |lambda|^2 / |d| peaks next to lambda_+ and
  // grows like (Re lambda)^{-1/2} as the set approaches the imaginary axis, so
  // its constant is fixed by the smallest sampled Re lambda (1e-4).
  const DweParams dp{3, 5.0, 1.0};
  o.detail << " dwe_v_lambda R2 sup at Re lambda =";
  for (double eps : {1e-2, 1e-4, 1e-6}) {
    double sup = 0.0;
    for (double m : log_space(1e-6, default_r_infty(dp), 4000)) {
      const Spectrum sp = dwe_spectrum(dp, m);
      const Complex lam(eps, sp.lambda_plus.imag());
      sup = std::max(sup, std::norm(lam) / std::abs((lam - sp.lambda_plus) * (lam - sp.lambda_minus)));
    }
    o.detail << " " << eps << ": " << fix(sup, 2);
  }
}

// ---------------------------------------------------------------- criterion 4
constexpr double kContourTol = 1e-6;
constexpr double kDoublingFactor = 3.0;
// The contour sum cancels O(1) terms, so a propagator smaller than this cannot
// be resolved to 1e-6 relative in double precision; such points are counted.
constexpr double kResolvableNorm = 1e-8;

void criterion4(Outcome& o) {
  const ModelParams cp;
  const DweParams dp;
  const auto xs_c = log_space(1e-3, default_r_infty(cp), 16);
  const auto xs_d = log_space(1e-3, default_r_infty(dp), 16);
  double worst_c = 0, worst_d = 0, min_factor = INFINITY;
  int below_floor = 0;
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    ContourSpec s;
    s.t = t;
    for (double x : xs_c) {
      const FreqVector xi = FreqVector::along_axis(3, x);
      if (cns_propagator(cp, xi, t).norm() < kResolvableNorm) {
        ++below_floor;
        continue;
      }
      worst_c = std::max(worst_c, rel(semigroup_via_contour(cp, xi, t, s).value, cns_propagator(cp, xi, t)));
      min_factor = std::min(min_factor, contour_convergence(cp, xi, t, s, 4).min_factor);
    }
    for (double x : xs_d) {
      const FreqVector xi = FreqVector::along_axis(3, x);
      const CMatrix exact = dwe_propagator(dp, xi, t);
      if (exact.norm() < kResolvableNorm) {
        ++below_floor;
        continue;
      }
      worst_d = std::max(worst_d, rel(semigroup_via_contour(dp, xi, t, s).value, exact));
    }
  }
  o.require(worst_c <= kContourTol, "compressible contour");
  o.require(worst_d <= kContourTol, "damped-wave contour");
  o.require(min_factor >= kDoublingFactor, "doubling factor");
  o.detail << " max rel error cns " << sci(worst_c) << ", dwe " << sci(worst_d) << ", min doubling factor "
           << fix(min_factor, 2) << ", points below the resolvable norm " << below_floor << "/128";
}

// ---------------------------------------------------------------- criterion 5
constexpr double kL2Exponent = -0.75, kL2ExponentTol = 0.10;
constexpr double kH1Exponent = -1.25, kH1ExponentTol = 0.15;
constexpr double kPerturbShift = 0.10;

void criterion5(Outcome& o) {
  const ModelParams p;
  const Grid g = Grid::cubic(3, 128, 40 * kPi);
  const CutoffSpec c{0.05, 0.15};
  TrajectoryOptions opt;
  opt.record_linf = false;
  opt.record_grad_ln = false;
  const Field u0 = gaussian_bump(g, std::sqrt(p.a()), 4, 1);
  const auto tg = log_time_grid(1.0, 200.0, 16);
  const Trajectory lin = evolve_cns_linear(p, u0, tg, c, opt);
  ProfileOptions po;
  po.epsilon = 0.01;
  const CnsPerturbation B(p, make_cns_profile(g, po));
  StepSchedule sch;
  sch.dt0 = 0.1;
  sch.dt_rel = 0.1;
  sch.dt_max = 5.0;
  const Trajectory pert = evolve_cns_perturbed(p, B, u0, tg, c, sch, opt);
  const DecayFit l2 = decay_fit(lin.series("l2"), 5.0, 200.0), h1 = decay_fit(lin.series("h1"), 5.0, 200.0);
  const DecayFit pl2 = decay_fit(pert.series("l2"), 5.0, 200.0), ph1 = decay_fit(pert.series("h1"), 5.0, 200.0);
  o.require(std::abs(l2.exponent - kL2Exponent) <= kL2ExponentTol, "L2 exponent");
  o.require(std::abs(h1.exponent - kH1Exponent) <= kH1ExponentTol, "gradient exponent");
  o.require(std::abs(pl2.exponent - l2.exponent) < kPerturbShift, "perturbed L2 shift");
  o.require(std::abs(ph1.exponent - h1.exponent) < kPerturbShift, "perturbed gradient shift");
  o.detail << " L2 " << fix(l2.exponent) << " (R2 " << fix(l2.r2, 3) << "), grad " << fix(h1.exponent) << " (R2 "
           << fix(h1.r2, 3) << "); eps=0.01: L2 " << fix(pl2.exponent) << ", grad " << fix(ph1.exponent) << ", "
           << pert.steps << " steps";
}

// ---------------------------------------------------------------- criterion 6
constexpr double kExpR2 = 0.99;

void criterion6(Outcome& o) {
  const Grid g = Grid::cubic(3, 32, 32.0);
  const CutoffSpec c{0.25, 0.5};
  std::vector<double> tg;
  for (int k = 0; k <= 40; ++k) tg.push_back(0.25 * k);
  const Trajectory tc = evolve_cns_linear(ModelParams{}, high_frequency_data(g, c, 4, 9), tg, c);
  const Trajectory td =
      evolve_dwe(DweParams{}, nullptr, high_frequency_data(g, c, 1, 10), Field(g, 1), tg, c, StepSchedule{});
  for (const auto& [name, tr, kind] :
       {std::tuple{"cns", &tc, EnergyKind::CnsHigh}, std::tuple{"dwe", &td, EnergyKind::DweHigh}}) {
    const ExpFit fn = exponential_fit(tr->series("l2"), 2.0, 10.0);
    const ExpFit fe = exponential_fit(tr->series("energy"), 2.0, 10.0);
    const EnergySeries es = energy_functional(*tr, kind);
    const std::string n = name;
    o.require(fn.rate > 0.0 && fn.r2 > kExpR2, n + " norm fit");
    o.require(fe.rate > 0.0 && fe.r2 > kExpR2, n + " energy fit");
    o.require(es.monotone, n + " energy monotone");
    o.detail << " " << n << ": norm rate " << fix(fn.rate) << " (R2 " << fix(fn.r2, 5) << "), energy rate "
             << fix(fe.rate) << " (R2 " << fix(fe.r2, 5) << "), monotone " << (es.monotone ? "yes" : "no") << ";";
  }
}

// ---------------------------------------------------------------- criterion 7
constexpr double kClosedFormTol = 1e-8;
constexpr double kEnvelopeFactor = 1.05;
constexpr double kGap = -0.5, kGapTol = 0.15;

void criterion7(Outcome& o) {
  // single Fourier mode against the hand-solved ODE
  double worst = 0.0;
  {
    const Grid g = Grid::cubic(3, 16, 2 * kPi);
    for (const DweParams& p : {DweParams{3, 5.0, 1.0}, DweParams{3, 0.5, 2.0}, DweParams{3, 1.0, 1.0}}) {
      const Field u0 = cosine_mode(g, {1, 1, 0});
      const auto tg = log_time_grid(0.05, 20.0, 6);
      const Trajectory tr = evolve_dwe(p, nullptr, u0, Field(g, 1), tg, CutoffSpec{}, StepSchedule{});
      for (std::size_t k = 0; k < tg.size(); ++k)
        worst = std::max(worst, std::abs(tr.l2[k] / tr.l2[0] - std::abs(oracle::dwe_mode_exact(p.mu, p.mu_prime, 2.0, tg[k]))));
    }
  }
  o.require(worst <= kClosedFormTol, "closed form");

  // width mu / sqrt(mu') is where damping and propagation balance
  const DweParams p;
  const double L = 80 * kPi, t_hi = 0.5 * std::pow(L / (2 * kPi), 2);
  const Grid g = Grid::cubic(3, 128, L);
  TrajectoryOptions opt;
  opt.record_linf = false;
  opt.record_grad_ln = false;
  const Field u0 = gaussian_bump(g, p.mu / std::sqrt(p.mu_prime), 1, 0);
  const auto tg = log_time_grid(1.0, t_hi, 12);
  StepSchedule sch;
  sch.dt0 = 0.05;
  sch.dt_rel = 0.1;
  sch.dt_max = 5.0;
  ProfileOptions po;
  po.epsilon = 0.01;
  const DwePerturbation B(p, make_dwe_profile(g, po));
  const Trajectory a = evolve_dwe(p, nullptr, u0, Field(g, 1), tg, CutoffSpec{}, sch, opt);
  const Trajectory b = evolve_dwe(p, &B, u0, Field(g, 1), tg, CutoffSpec{}, sch, opt);
  double ratio = 0.0;
  for (std::size_t k = 0; k < tg.size(); ++k) {
    double env = 0.0;
    for (std::size_t j = k; j < tg.size(); ++j) env = std::max(env, a.total_energy[j]);
    ratio = std::max(ratio, b.total_energy[k] / env);
  }
  const DecayFit l2 = decay_fit(b.series("l2"), 5.0, t_hi), h1 = decay_fit(b.series("h1"), 5.0, t_hi);
  const double gap = h1.exponent - l2.exponent;
  o.require(ratio <= kEnvelopeFactor, "energy envelope");
  o.require(std::abs(gap - kGap) <= kGapTol, "exponent gap");
  o.require(b.warnings.empty(), "run warnings");
  o.detail << " closed form " << sci(worst) << ", energy / envelope " << fix(ratio, 6) << ", L2 " << fix(l2.exponent)
           << ", grad " << fix(h1.exponent) << ", gap " << fix(gap) << " on [5, " << t_hi << "], " << b.steps
           << " steps";
}

// ---------------------------------------------------------------- criterion 8
constexpr double kLorentzSpread = 0.20;
constexpr double kGrowth = 1.0 / 6.0, kGrowthTol = 0.05;
constexpr double kCrossBudget = 0.01;
constexpr double kWeightedRefinement = 0.10;

void criterion8(Outcome& o) {
  const CounterexampleSpec spec;
  const Grid g = counterexample_grid(512, spec);
  const CounterexampleStudy st = fN_study(spec, {8, 32, 128, 512}, g);
  double budget = 0.0;
  for (const auto& r : st.rows) budget = std::max(budget, r.cross_budget);
  const WeightedProfileReport w = weighted_profile_in_besov(WeightedProfileSpec{}, Grid::cubic(3, 64, 32.0));
  o.require(st.lorentz_spread < kLorentzSpread, "weak L3 spread");
  o.require(std::abs(st.growth.exponent - kGrowth) <= kGrowthTol, "Besov growth exponent");
  o.require(budget < kCrossBudget, "cross-term budget");
  o.require(std::isfinite(w.half_norm) && w.half_norm > 0.0, "weighted half-norm finite");
  o.require(w.refinement_change < kWeightedRefinement, "weighted refinement");
  o.detail << " weak L3 spread " << fix(100 * st.lorentz_spread, 2) << "%, growth " << fix(st.growth.exponent)
           << " (target " << fix(kGrowth) << "), cross budget " << sci(budget) << ", weighted half-norm "
           << fix(w.half_norm) << " refinement " << fix(100 * w.refinement_change, 2) << "%";
}

// ---------------------------------------------------------------- criterion 9
constexpr double kLorentzLp = 1e-6;
constexpr double kPlancherel = 1e-10;

void criterion9(Outcome& o) {
  std::mt19937_64 rng(9009);
  std::normal_distribution<double> nd;
  double w_lp = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const Grid g = Grid::cubic(d, d == 3 ? 16 : 64, 6.0);
    Field f(g, 1);
    for (double& v : f[0]) v = nd(rng);
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0})
      w_lp = std::max(w_lp, std::abs(lorentz_norm(f, {p, p}) / lp_norm(f, p) - 1.0));
  }
  o.require(w_lp <= kLorentzLp, "Lorentz (p,p) = L^p");

  // L = 40 pi puts r1 = 0.5 exactly on the tenth lattice shell
  const CutoffSpec c;
  const Grid pg = Grid::cubic(3, 64, 40 * kPi);
  const PoincareReport pr = poincare_check(c, pg, 8, 31);
  const bool witness_exact = std::abs(pr.witness_xi - c.r1()) <= 1e-14 * c.r1() &&
                             std::abs(pr.witness_ratio * c.r1() - 1.0) <= 1e-12;
  o.require(witness_exact, "Poincare witness at r1");
  o.require(pr.all_within_bound, "Poincare bound");

  double w_pl = 0.0;
  for (int d = 1; d <= 3; ++d) {
    const Grid g = Grid::box(d, {d == 3 ? 16 : 128, 32, 8}, {7.0, 5.0, 3.0});
    Field f(g, 3);
    for (auto& comp : f.data)
      for (double& v : comp) v = nd(rng);
    const double ph = physical_l2_sq(f);
    w_pl = std::max(w_pl, std::abs(spectral_l2_sq(to_spectral(f)) - ph) / ph);
  }
  o.require(w_pl <= kPlancherel, "Plancherel");

  // every level set of the rearrangement has exactly the measure of the original
  const Grid rg = Grid::cubic(2, 64, 10.0);
  Field f(rg, 1);
  for (double& v : f[0]) v = std::round(4.0 * nd(rng)) / 4.0;  // many ties
  const RearrangementTable t = RearrangementTable::of(f);
  std::vector<double> mags;
  for (double v : f[0]) mags.push_back(std::abs(v));
  std::sort(mags.rbegin(), mags.rend());
  bool equi = t.values() == mags;
  for (double lam : std::set<double>(mags.begin(), mags.end())) {
    std::size_t count = 0;
    for (double v : mags) count += v > lam;
    equi = equi && t.distribution(lam) == static_cast<double>(count) * rg.cell_volume();
  }
  o.require(equi, "equimeasurability");
  o.detail << " Lorentz(p,p)/L^p " << sci(w_lp) << ", Poincare witness |xi| " << pr.witness_xi << " ratio*r1 "
           << fix(pr.witness_ratio * c.r1(), 15) << ", Plancherel " << sci(w_pl) << ", equimeasurable "
           << (equi ? "exact" : "no");
}

// --------------------------------------------------------------- criterion 10
int cli_run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"parspec_cli"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

bool same_tree(const fs::path& a, const fs::path& b) {
  std::size_t n = 0, m = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    const fs::path other = b / e.path().filename();
    if (!fs::exists(other) || read_file(e.path()) != read_file(other)) return false;
    ++n;
  }
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(b)) ++m;
  return n > 0 && n == m;
}

void criterion10(Outcome& o) {
  const fs::path src = PARSPEC_SOURCE_DIR;
  const fs::path work = fs::temp_directory_path() / "parspec_acceptance_determinism";
  fs::remove_all(work);
  std::vector<fs::path> configs;
  for (const auto& e : fs::directory_iterator(src / "configs"))
    if (e.path().extension() == ".toml") configs.push_back(e.path());
  std::sort(configs.begin(), configs.end());
  int identical = 0;
  for (const auto& cfg : configs) {
    const std::string cmd = load_config(cfg).command, stem = cfg.stem().string();
    const fs::path a = work / "a" / stem, b = work / "b" / stem;
    const int ra = cli_run({cmd, "--config", cfg.string(), "--out", a.string(), "--quiet", "--threads", "1"});
    const int rb = cli_run({cmd, "--config", cfg.string(), "--out", b.string(), "--quiet"});
    const bool same = ra == 0 && rb == 0 && same_tree(a, b);
    o.require(same, stem + " reproducible");
    identical += same;
  }
  o.require(configs.size() >= 7, "golden configs present");
  o.detail << " " << identical << "/" << configs.size() << " golden configs byte-identical across reruns";
  fs::remove_all(work);
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parspec acceptance suite"};
  std::vector<int> only;
  bool strict = false;
  app.add_option("--only", only, "run only these criteria")->delimiter(',')->check(CLI::Range(1, 10));
  app.add_flag("--strict", strict, "exit 1 if any criterion fails");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "spectral algebra", 30, criterion1},
      {2, "resolvent formulas", 30, criterion2},
      {3, "resolvent bound scan", 300, criterion3},
      {4, "contour semigroup", 120, criterion4},
      {5, "compressible decay exponents", 600, criterion5},
      {6, "high-frequency exponential decay", 120, criterion6},
      {7, "damped-wave energy and decay", 600, criterion7},
      {8, "counterexample", 300, criterion8},
      {9, "norm oracles", 60, criterion9},
      {10, "determinism", 600, criterion10},
  };
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.limit_s, "runtime limit");
    failed += !o.pass;
    std::printf("criterion %2d %s  %s:%s [%.1f s, limit %.0f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                o.detail.str().c_str(), secs, c.limit_s);
    std::fflush(stdout);
  }
  return strict && failed > 0 ? 1 : 0;
}
