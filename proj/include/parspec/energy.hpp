#pragma once

#include "parspec/grid.hpp"
#include "parspec/symbol.hpp"

#include <string>
#include <vector>

namespace parspec {

struct EnergyParams {
  double s = 3.0;
  double kappa = 0.1;  // cross-term weight; monotone for kappa <= min(2 gamma / (alpha + beta), (alpha + beta) / gamma)
  void validate() const;
};

// sum_xi (1+|xi|^2)^s (|phi^|^2 + |w^|^2) + 2 kappa (1+|xi|^2)^{s-1} Re(w^ . conj(i xi phi^)),
// Parseval-scaled. Applied to the high part by the caller.
double cns_energy(const SpectralField& u, const EnergyParams& e);
// ||u||_{H^s}^2 for the comparison
double cns_energy_norm_sq(const SpectralField& u, const EnergyParams& e);

// mu' ||grad u||^2 + ||v||^2 for U = (u, v); equals ||grad u||^2 + ||u_t||^2 when mu' = 1.
double dwe_energy(const DweParams& p, const SpectralField& U);
// ||u||_{H^1}^2 + ||v||^2
double dwe_energy_norm_sq(const SpectralField& U);

enum class EnergyKind { CnsHigh, DweHigh };

struct Trajectory;

struct EnergySeries {
  std::vector<double> t;
  std::vector<double> energy;
  std::vector<double> norm_sq;
  // measured C with C^{-1} ||u||^2 <= E <= C ||u||^2 on every sample
  double lower_ratio = 0.0;  // min E / ||u||^2
  double upper_ratio = 0.0;  // max E / ||u||^2
  double equivalence_constant = 0.0;
  // discrete dissipation: E_{k+1} - E_k <= tolerance_k
  bool monotone = true;
  double worst_excess = 0.0;  // max of (E_{k+1} - E_k - tol_k) / E_k, <= 0 when monotone
};

// tol_k = 10 * dt * E_k with dt = trajectory.dt_max_used (plus 1e-12 E_k rounding slack)
EnergySeries energy_functional(const Trajectory& tr, EnergyKind which);

}  // namespace parspec
