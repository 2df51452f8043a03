#include "parspec/evolution.hpp"

#include "parspec/error.hpp"
#include "parspec/freq_split.hpp"
#include "parspec/kernels.hpp"
#include "parspec/profile.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace parspec {

void StepSchedule::validate() const {
  require(dt0 > 0.0 && dt_max >= dt0, "step schedule needs 0 < dt0 <= dt_max");
  require(dt_rel >= 0.0, "dt_rel must be nonnegative");
}

double StepSchedule::at(double t) const { return std::min(dt_max, std::max(dt0, dt_rel * t)); }

Series Trajectory::series(const std::string& which) const {
  const std::vector<double>* v = nullptr;
  if (which == "l2") v = &l2;
  else if (which == "h1") v = &h1;
  else if (which == "linf") v = &linf;
  else if (which == "grad_ln") v = &grad_ln;
  else if (which == "low_l2") v = &low_l2;
  else if (which == "low_h1") v = &low_h1;
  else if (which == "high_l2") v = &high_l2;
  else if (which == "energy") v = &energy;
  else if (which == "total_energy") v = &total_energy;
  else raise(ErrorCode::InvalidArgument, "unknown trajectory series: " + which);
  require(v->size() == t.size(), "series " + which + " was not recorded");
  Series s;
  for (std::size_t k = 0; k < t.size(); ++k) s.emplace_back(t[k], (*v)[k]);
  return s;
}

void Trajectory::check() const {
  for (std::size_t k = 1; k < t.size(); ++k) require(t[k] > t[k - 1], "trajectory times must increase");
  for (const auto* v : {&l2, &h1, &linf, &grad_ln, &low_l2, &low_h1, &high_l2, &energy, &total_energy})
    for (double x : *v) require(x >= 0.0 && std::isfinite(x), "trajectory norms must be finite and nonnegative");
}

namespace {

void check_times(const std::vector<double>& tg) {
  require(!tg.empty(), "time grid is empty");
  require(tg.front() >= 0.0, "time grid must start at t >= 0");
  for (std::size_t k = 1; k < tg.size(); ++k) require(tg[k] > tg[k - 1], "time grid must be strictly increasing");
}

double norm_l2(const SpectralField& u, Exec ex) { return std::sqrt(kernels::sobolev_sq(u, 0.0, false, ex)); }
double norm_h1(const SpectralField& u, Exec ex) { return std::sqrt(kernels::sobolev_sq(u, 1.0, true, ex)); }

SpectralField first_component(const SpectralField& u) {
  SpectralField s(u.grid, 1, u.support);
  s[0] = u[0];
  return s;
}

double grad_ln_norm(const SpectralField& u) {
  const int n = u.grid.dim;
  SpectralField g(u.grid, u.components * n);
  for (int c = 0; c < u.components; ++c)
    for (int j = 0; j < n; ++j) g[c * n + j] = partial(u, c, j)[0];
  return lp_norm(to_physical(g), static_cast<double>(n));
}

struct Recorder {
  Trajectory& tr;
  const CutoffSpec& cutoff;
  const TrajectoryOptions& o;
  const DweParams* dwe = nullptr;

  void operator()(const SpectralField& state, double t) {
    const Exec ex = o.exec;
    const bool is_dwe = dwe != nullptr;
    const SpectralField u = is_dwe ? first_component(state) : state;
    const SpectralField low = project_low(u, cutoff);
    const SpectralField high_state = project_high(state, cutoff);
    const SpectralField high = is_dwe ? first_component(high_state) : high_state;
    tr.t.push_back(t);
    tr.l2.push_back(norm_l2(u, ex));
    tr.h1.push_back(norm_h1(u, ex));
    tr.low_l2.push_back(norm_l2(low, ex));
    tr.low_h1.push_back(norm_h1(low, ex));
    tr.high_l2.push_back(norm_l2(high, ex));
    if (is_dwe) {
      tr.energy.push_back(dwe_energy(*dwe, high_state));
      tr.high_norm_sq.push_back(dwe_energy_norm_sq(high_state));
      tr.total_energy.push_back(dwe_energy(*dwe, state));
    } else {
      tr.energy.push_back(cns_energy(high_state, o.energy));
      tr.high_norm_sq.push_back(cns_energy_norm_sq(high_state, o.energy));
      tr.total_energy.push_back(cns_energy(state, o.energy));
    }
    if (o.record_linf) tr.linf.push_back(lp_norm(to_physical(u), INFINITY));
    if (o.record_grad_ln) tr.grad_ln.push_back(grad_ln_norm(u));
    auto run_max = [&](std::vector<double>& z, double val, double d) {
      const double w = std::pow(1.0 + t, d) * val;
      z.push_back(z.empty() ? w : std::max(z.back(), w));
    };
    run_max(tr.z_l2, tr.l2.back(), o.delta);
    run_max(tr.z_h1, tr.h1.back(), o.delta_grad);
    if (o.record_linf) run_max(tr.z_linf, tr.linf.back(), o.delta_linf);
  }
};

Trajectory start(const std::string& system, int dim, const TrajectoryOptions& o) {
  o.energy.validate();
  Trajectory tr;
  tr.system = system;
  tr.dim = dim;
  tr.delta = o.delta;
  tr.delta_grad = o.delta_grad;
  tr.delta_linf = o.delta_linf;
  return tr;
}

SpectralField cns_initial(const ModelParams& p, const Field& u0) {
  p.validate();
  require(u0.components == p.n + 1, "CNS data needs n + 1 components");
  require(u0.grid.dim == p.n, "model dimension must match the grid");
  SpectralField s = to_spectral(u0);
  drop_nyquist(s);
  return s;
}

// Advance by ETD1 from t to t_end with the schedule, shortening the last step.
template <class StepFn>
int march(double& t, double t_end, const StepSchedule& sch, StepFn&& step) {
  int steps = 0;
  while (t_end - t > 1e-12 * std::max(1.0, t_end)) {
    double dt = sch.at(t);
    if (t + dt >= t_end - 1e-12 * std::max(1.0, t_end)) dt = t_end - t;
    step(dt);
    t += dt;
    ++steps;
  }
  t = t_end;
  return steps;
}

void blowup_guard(double now, double initial) {
  if (initial > 0.0 && (!std::isfinite(now) || now > 1e6 * initial))
    raise(ErrorCode::BlowupDetected, "state norm grew by more than 1e6");
}

}  // namespace

Trajectory evolve_cns_linear(const ModelParams& p, const Field& u0, const std::vector<double>& t_grid,
                             const CutoffSpec& cutoff, const TrajectoryOptions& o) {
  check_times(t_grid);
  const SpectralField s0 = cns_initial(p, u0);
  Trajectory tr = start("cns", p.n, o);
  Recorder rec{tr, cutoff, o};
  for (double t : t_grid) {
    SpectralField s = s0;
    kernels::cns_propagate(p, ModeFunction::Exp, t, s, o.exec);
    rec(s, t);
  }
  return tr;
}

SpectralField cns_perturbed_state(const ModelParams& p, const CnsPerturbation& B, const SpectralField& u0,
                                  double t_end, const StepSchedule& dt, Exec ex) {
  dt.validate();
  require(u0.grid == B.grid(), "data grid must match the perturbation grid");
  check_cfl(B.sups(), p.gamma, std::min(p.alpha, p.alpha + p.beta), dt.dt_max, max_resolved_xi(u0.grid));
  SpectralField u = u0;
  const double n0 = norm_l2(u, ex);
  double t = 0.0;
  march(t, t_end, dt, [&](double h) {
    SpectralField g = B.apply(u, ex);
    for (auto& arr : g.data)
      for (Complex& v : arr) v = -v;
    kernels::cns_etd1(p, h, u, g, ex);
    blowup_guard(norm_l2(u, ex), n0);
  });
  return u;
}

Trajectory evolve_cns_perturbed(const ModelParams& p, const CnsPerturbation& B, const Field& u0,
                                const std::vector<double>& t_grid, const CutoffSpec& cutoff,
                                const StepSchedule& dt, const TrajectoryOptions& o) {
  check_times(t_grid);
  dt.validate();
  SpectralField u = cns_initial(p, u0);
  require(u.grid == B.grid(), "data grid must match the perturbation grid");
  if (B.low_frequency_only()) u = project_low(u, cutoff);
  check_cfl(B.sups(), p.gamma, std::min(p.alpha, p.alpha + p.beta), dt.dt_max, max_resolved_xi(u.grid));

  Trajectory tr = start("cns", p.n, o);
  tr.dt_max_used = 0.0;
  Recorder rec{tr, cutoff, o};
  const double n0 = norm_l2(u, o.exec);
  double t = 0.0;
  for (double target : t_grid) {
    tr.steps += march(t, target, dt, [&](double h) {
      SpectralField g = B.apply(u, o.exec);
      for (auto& arr : g.data)
        for (Complex& v : arr) v = -v;
      kernels::cns_etd1(p, h, u, g, o.exec);
      tr.dt_max_used = std::max(tr.dt_max_used, h);
      blowup_guard(norm_l2(u, o.exec), n0);
    });
    rec(u, target);
  }
  return tr;
}

Trajectory evolve_dwe(const DweParams& p, const DwePerturbation* B, const Field& u0, const Field& v0,
                      const std::vector<double>& t_grid, const CutoffSpec& cutoff, const StepSchedule& dt,
                      const TrajectoryOptions& o) {
  p.validate();
  check_times(t_grid);
  require(u0.components == 1 && v0.components == 1, "damped-wave data must be scalar");
  require(u0.grid == v0.grid && u0.grid.dim == p.n, "damped-wave data grids must match the model");
  SpectralField U(u0.grid, 2);
  U[0] = to_spectral(u0)[0];
  U[1] = to_spectral(v0)[0];
  drop_nyquist(U);

  Trajectory tr = start("dwe", p.n, o);
  if (p.mu < 2.0 / cutoff.r1()) {
    std::ostringstream os;
    os << "MuConditionViolated: mu = " << p.mu << " < 2 C1 = " << 2.0 / cutoff.r1()
       << " (C1 = 1/r1, measured Poincare constant)";
    tr.warnings.push_back(os.str());
  }
  DweParams pp = p;
  Recorder rec{tr, cutoff, o, &pp};
  if (B == nullptr) {
    for (double t : t_grid) {
      SpectralField s = U;
      kernels::dwe_propagate(p, ModeFunction::Exp, t, s, o.exec);
      rec(s, t);
    }
    return tr;
  }
  dt.validate();
  require(B->grid() == U.grid, "data grid must match the perturbation grid");
  check_cfl(B->sups(), 1.0, p.mu_prime, dt.dt_max, max_resolved_xi(U.grid));
  const double n0 = norm_l2(U, o.exec);
  double t = 0.0;
  for (double target : t_grid) {
    tr.steps += march(t, target, dt, [&](double h) {
      SpectralField g = B->apply(U, o.exec);
      for (auto& arr : g.data)
        for (Complex& v : arr) v = -v;
      kernels::dwe_etd1(p, h, U, g, o.exec);
      tr.dt_max_used = std::max(tr.dt_max_used, h);
      blowup_guard(norm_l2(U, o.exec), n0);
    });
    rec(U, target);
  }
  return tr;
}

namespace {

template <class Fn>
Field sample_scalar(const Grid& g, int comps, int comp, Fn&& fn) {
  g.validate();
  require(comp >= 0 && comp < comps, "data component out of range");
  Field f(g, comps);
  std::size_t idx = 0;
  for (int i0 = 0; i0 < g.points[0]; ++i0)
    for (int i1 = 0; i1 < g.points[1]; ++i1)
      for (int i2 = 0; i2 < g.points[2]; ++i2, ++idx) {
        const int ii[3] = {i0, i1, i2};
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) r2 += g.coord(a, ii[a]) * g.coord(a, ii[a]);
        f[comp][idx] = fn(std::sqrt(r2));
      }
  return f;
}

}  // namespace

Field gaussian_bump(const Grid& g, double sigma, int comps, int comp) {
  require(sigma > 0.0, "bump width must be positive");
  Field f = sample_scalar(g, comps, comp, [&](double r) { return std::exp(-0.5 * r * r / (sigma * sigma)); });
  double s = 0.0;
  for (double v : f[comp]) s += v;
  const double scale = 1.0 / (s * g.cell_volume());
  for (double& v : f[comp]) v *= scale;
  return f;
}

Field lp_proxy(const Grid& g, double sigma, double p, int comps, int comp) {
  require(sigma > 0.0, "proxy width must be positive");
  require(p >= 1.0 && p < 2.0, "L^p proxy needs 1 <= p < 2");
  double L = g.length[0];
  for (int a = 1; a < g.dim; ++a) L = std::min(L, g.length[a]);
  const double e = g.dim / p;
  Field f = sample_scalar(g, comps, comp, [&](double r) {
    return periodizing_cutoff(r, L) * std::pow(1.0 + r * r / (sigma * sigma), -0.5 * e);
  });
  Field one(g, 1);
  one[0] = f[comp];
  const double nrm = lp_norm(one, p);
  for (double& v : f[comp]) v /= nrm;
  return f;
}

Field high_frequency_data(const Grid& g, const CutoffSpec& c, int comps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double cap = INFINITY;
  for (int a = 0; a < g.dim; ++a) cap = std::min(cap, (g.points[a] / 2 - 1) * g.dk(a));
  SpectralField s = random_band_limited(g, comps, cap, rng, 1.0);
  drop_nyquist(s);
  return to_physical(project_high(s, c));
}

std::vector<double> log_time_grid(double t_first, double t_end, int per_decade) {
  require(t_first > 0.0 && t_end > t_first, "log time grid needs 0 < t_first < t_end");
  require(per_decade >= 1, "need at least one sample per decade");
  std::vector<double> v{0.0};
  const double l0 = std::log10(t_first), l1 = std::log10(t_end);
  const int m = std::max(1, static_cast<int>(std::ceil((l1 - l0) * per_decade)));
  for (int k = 0; k <= m; ++k) v.push_back(std::pow(10.0, l0 + (l1 - l0) * k / m));
  v.back() = t_end;
  return v;
}

std::string to_csv(const Trajectory& tr) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "t,l2,h1,low_l2,low_h1,high_l2,energy";
  if (!tr.linf.empty()) os << ",linf";
  if (!tr.grad_ln.empty()) os << ",grad_ln";
  os << "\n";
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    os << tr.t[k] << ',' << tr.l2[k] << ',' << tr.h1[k] << ',' << tr.low_l2[k] << ',' << tr.low_h1[k] << ','
       << tr.high_l2[k] << ',' << tr.energy[k];
    if (!tr.linf.empty()) os << ',' << tr.linf[k];
    if (!tr.grad_ln.empty()) os << ',' << tr.grad_ln[k];
    os << "\n";
  }
  return os.str();
}

std::string to_json(const Trajectory& tr) {
  nlohmann::ordered_json j;
  j["system"] = tr.system;
  j["dim"] = tr.dim;
  j["steps"] = tr.steps;
  j["dt_max_used"] = tr.dt_max_used;
  j["delta"] = tr.delta;
  j["t"] = tr.t;
  j["l2"] = tr.l2;
  j["h1"] = tr.h1;
  j["low_l2"] = tr.low_l2;
  j["low_h1"] = tr.low_h1;
  j["high_l2"] = tr.high_l2;
  j["energy"] = tr.energy;
  j["total_energy"] = tr.total_energy;
  if (!tr.linf.empty()) j["linf"] = tr.linf;
  if (!tr.grad_ln.empty()) j["grad_ln"] = tr.grad_ln;
  j["z_l2"] = tr.z_l2;
  j["z_h1"] = tr.z_h1;
  if (!tr.z_linf.empty()) j["z_linf"] = tr.z_linf;
  j["warnings"] = tr.warnings;
  return j.dump(2);
}

}  // namespace parspec
