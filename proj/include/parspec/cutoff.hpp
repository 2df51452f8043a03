#pragma once

#include "parspec/grid.hpp"

#include <cmath>

namespace parspec {

// chi_1 = 1 on the cube |xi|_inf <= r1p and 0 for |xi|_inf >= rinfp.
struct CutoffSpec {
  double r1p = 0.25;
  double rinfp = 0.5;
  double mollifier_width = 0.0;  // 0 means rinfp - r1p

  void validate() const;
  double r1() const { return 2.0 * r1p; }
  double r_infty() const { return 2.0 * rinfp; }
  double width() const;
};

// C-infinity step: 0 for t <= 0, 1 for t >= 1, from the bump exp(-1/(1-s^2)).
double smooth_step(double t);

double chi_low(const CutoffSpec& c, const double* xi, int dim);
inline double chi_high(const CutoffSpec& c, const double* xi, int dim) { return 1.0 - chi_low(c, xi, dim); }

// Littlewood-Paley: rho = 1 on |xi| <= 3/4, 0 for |xi| >= 4/3;
// phi(xi) = rho(|xi|/2) - rho(|xi|) supported in 3/4 <= |xi| <= 8/3.
double lp_rho(double r);
double lp_phi(double r);
inline double lp_phi_j(int j, double r) { return lp_phi(std::ldexp(r, -j)); }

}  // namespace parspec
