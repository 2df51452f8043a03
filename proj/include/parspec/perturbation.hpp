#pragma once

#include "parspec/cutoff.hpp"
#include "parspec/exec.hpp"
#include "parspec/grid.hpp"
#include "parspec/profile.hpp"
#include "parspec/symbol.hpp"

#include <optional>

namespace parspec {

// Sup norms of the zeroth, first and second order coefficients of a
// perturbation, used by the explicit stepping stability check.
struct CoefficientSups {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

// Throws CFLViolation unless dt * scale * (c1 * xi_max + c0) <= 0.5 and
// scale * c2 < 0.5 * dissipation.
void check_cfl(const CoefficientSups& s, double scale, double dissipation, double dt, double xi_max);

// Pressure law p(rho) = (gamma^2 / kappa) rho^kappa with rho_* = 1; kappa = 1 is isothermal.
struct PressureLaw {
  double kappa = 1.0;
  // p^(1)(phi) = (1/gamma) int_0^1 (1 - theta) p''(1 + theta phi) d theta
  double p1(double phi, double gamma) const;
};

// h^(1)(phi) = int_0^1 h'(1 + theta phi) d theta with h(t) = 1/t
inline double h1(double phi) { return -1.0 / (1.0 + phi); }

// Linearization of the compressible system about (phi_w, w_w):
// B u = gamma (b11 + b12, b21 + b22 + b23). With a cutoff, B_1 = P_1 B.
class CnsPerturbation {
 public:
  CnsPerturbation(const ModelParams& p, const SyntheticProfile& prof, PressureLaw law = {},
                  std::optional<CutoffSpec> low_only = std::nullopt);

  SpectralField apply(const SpectralField& u, Exec ex = default_exec()) const;
  const CoefficientSups& sups() const { return sups_; }
  const Grid& grid() const { return grid_; }
  bool low_frequency_only() const { return cutoff_.has_value(); }
  const ModelParams& params() const { return p_; }

 private:
  ModelParams p_;
  Grid grid_;
  std::optional<CutoffSpec> cutoff_;
  int n_;
  // physical coefficient fields
  Field phi_w_, w_w_, grad_phi_w_, div_w_w_, grad_w_w_;
  Field coef_phi_;   // n comps: multiplies phi in the velocity rows
  Field coef_grad_;  // (h + 2 p1) phi_w: multiplies grad phi
  Field coef_visc_;  // -h phi_w / gamma^2: multiplies (alpha Lap + beta grad div) w
  CoefficientSups sups_;
};

// Damped-wave perturbation B U = (0, u div b1 + b2 . grad u + b3 Lap u).
class DwePerturbation {
 public:
  DwePerturbation(const DweParams& p, const SyntheticProfile& prof,
                  std::optional<CutoffSpec> low_only = std::nullopt);

  SpectralField apply(const SpectralField& u, Exec ex = default_exec()) const;
  const CoefficientSups& sups() const { return sups_; }
  const Grid& grid() const { return grid_; }
  const DweParams& params() const { return p_; }

 private:
  DweParams p_;
  Grid grid_;
  std::optional<CutoffSpec> cutoff_;
  int n_;
  Field div_b1_, b2_, b3_;
  CoefficientSups sups_;
};

// Largest |xi| on the grid, Nyquist modes excluded.
double max_resolved_xi(const Grid& g);

}  // namespace parspec
