#pragma once

#include <string>
#include <utility>
#include <vector>

namespace parspec {

struct DecayFit {
  double t_lo = 0.0;
  double t_hi = 0.0;
  int samples = 0;
  // log value ~ intercept + exponent * log(1 + t)
  double exponent = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double stderr_exponent = 0.0;
  // quadratic coefficient of a second-order fit in log(1 + t), scaled by the squared window span
  double curvature = 0.0;
  bool power_law = false;
};

struct ExpFit {
  double t_lo = 0.0;
  double t_hi = 0.0;
  int samples = 0;
  // log value ~ intercept - rate * t
  double rate = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

using Series = std::vector<std::pair<double, double>>;

// Least-squares power-law fit on t in [t_lo, t_hi]. Needs at least 8 samples in the window.
DecayFit decay_fit(const Series& s, double t_lo, double t_hi);
ExpFit exponential_fit(const Series& s, double t_lo, double t_hi);
// Growth fit of log y against log x (used for N-scaling).
DecayFit loglog_fit(const Series& s);

std::string to_json(const DecayFit& f);
std::string to_json(const ExpFit& f);

}  // namespace parspec
