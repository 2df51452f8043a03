#pragma once

#include "parspec/cutoff.hpp"
#include "parspec/decay_fit.hpp"
#include "parspec/energy.hpp"
#include "parspec/exec.hpp"
#include "parspec/perturbation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace parspec {

// dt(t) = min(dt_max, max(dt0, dt_rel * t))
struct StepSchedule {
  double dt0 = 0.01;
  double dt_rel = 0.0;
  double dt_max = 0.01;
  void validate() const;
  double at(double t) const;
};

struct TrajectoryOptions {
  double delta = 0.75;       // weight of the L2 running sup
  double delta_grad = 1.25;  // weight of the gradient running sup
  double delta_linf = 1.5;   // weight of the L-infinity running sup
  bool record_linf = true;
  bool record_grad_ln = true;  // L^n norm of the gradient, costly on large grids
  EnergyParams energy;
  Exec exec = default_exec();
};

// Norm samples along a run. For the compressible system the norms are of the
// full state (phi, w); for the damped wave equation they are of u, and the
// energy uses (u, u_t).
struct Trajectory {
  std::string system;
  int dim = 0;
  std::vector<double> t;
  std::vector<double> l2, h1, linf, grad_ln;
  std::vector<double> low_l2, low_h1, high_l2;
  std::vector<double> energy;       // functional of the high part
  std::vector<double> high_norm_sq;  // the squared norm it is compared with
  std::vector<double> total_energy;  // same functional on the full state
  std::vector<double> z_l2, z_h1, z_linf;  // running sups of (1+t)^delta * norm
  double delta = 0.0, delta_grad = 0.0, delta_linf = 0.0;
  int steps = 0;
  double dt_max_used = 0.0;  // 0 for exact per-mode evolution
  std::vector<std::string> warnings;

  // one of l2, h1, linf, grad_ln, low_l2, low_h1, high_l2, energy, total_energy
  Series series(const std::string& which) const;
  void check() const;
};

// Nyquist modes are removed from all initial data so that derivatives stay real.
Trajectory evolve_cns_linear(const ModelParams& p, const Field& u0, const std::vector<double>& t_grid,
                             const CutoffSpec& cutoff, const TrajectoryOptions& o = {});

// Exponential Euler: exact linear flow plus the explicit perturbation weighted
// by phi_1. With a low-frequency-only perturbation the data are projected by P_1
// first and the run solves d_t u + A u + P_1 B u = 0.
Trajectory evolve_cns_perturbed(const ModelParams& p, const CnsPerturbation& B, const Field& u0,
                                const std::vector<double>& t_grid, const CutoffSpec& cutoff,
                                const StepSchedule& dt, const TrajectoryOptions& o = {});

// Final state of a perturbed run at t_end (for consistency checks).
SpectralField cns_perturbed_state(const ModelParams& p, const CnsPerturbation& B, const SpectralField& u0,
                                  double t_end, const StepSchedule& dt, Exec ex = default_exec());

// Without a perturbation the per-mode flow is exact and dt is ignored.
Trajectory evolve_dwe(const DweParams& p, const DwePerturbation* B, const Field& u0, const Field& v0,
                      const std::vector<double>& t_grid, const CutoffSpec& cutoff, const StepSchedule& dt,
                      const TrajectoryOptions& o = {});

// Initial data.
// Gaussian of width sigma with unit discrete integral in component `comp`.
Field gaussian_bump(const Grid& g, double sigma, int comps, int comp = 0);
// <x/sigma>^{-n/p}, periodized, unit discrete L^p norm (proxy for L^p data, 1 < p < 2).
Field lp_proxy(const Grid& g, double sigma, double p, int comps, int comp = 0);
// Random data with supp in the high-frequency region (P_inf applied).
Field high_frequency_data(const Grid& g, const CutoffSpec& c, int comps, std::uint64_t seed);

// 0 followed by `per_decade` log-spaced samples per decade on [t_first, t_end].
std::vector<double> log_time_grid(double t_first, double t_end, int per_decade);

std::string to_csv(const Trajectory& tr);
std::string to_json(const Trajectory& tr);

}  // namespace parspec
