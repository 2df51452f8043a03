#pragma once

#include "parspec/cutoff.hpp"
#include "parspec/exec.hpp"
#include "parspec/grid.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace parspec {

SpectralField project_low(const SpectralField& f, const CutoffSpec& c);
SpectralField project_high(const SpectralField& f, const CutoffSpec& c);
Field project_low(const Field& f, const CutoffSpec& c);
Field project_high(const Field& f, const CutoffSpec& c);

// (-Delta)^s as the multiplier |xi|^{2s}.
SpectralField fractional_laplacian(const SpectralField& f, double s);
Field fractional_laplacian(const Field& f, double s);

// i xi_axis multiplier; Nyquist entries along that axis are zeroed.
SpectralField partial(const SpectralField& f, int comp, int axis);
// gradient of a scalar component: dim components
SpectralField gradient(const SpectralField& f, int comp = 0);
// divergence of components [first, first + dim)
SpectralField divergence(const SpectralField& f, int first = 0);
// Laplacian of one component
SpectralField laplacian(const SpectralField& f, int comp);

// Zero every mode sitting on a Nyquist index.
void drop_nyquist(SpectralField& f);

// Random real field with independent Gaussian Fourier coefficients on integer
// modes |xi|_inf <= cap. The draw order depends only on the integer mode, so the
// same seed gives the same continuum function at any resolution.
SpectralField random_band_limited(const Grid& g, int comps, double cap, std::mt19937_64& rng,
                                  double decay = 0.0);

// Single cosine mode cos(k . x) with k = (m0, m1, m2) * dk.
Field cosine_mode(const Grid& g, std::array<int, 3> m, double amplitude = 1.0);

// L^p norm in physical space, cell-volume weighted; vector fields use the Euclidean magnitude.
double lp_norm(const Field& f, double p);

struct BernsteinReport {
  double k = 0.0;
  double p = 0.0;
  int trials = 0;
  std::vector<double> ratios;
  double sup_ratio = 0.0;
  double multiplier_bound = 0.0;  // sup |xi|^k chi_1 on the grid
  double refined_sup = 0.0;
  double refinement_change = 0.0;  // relative change under resolution doubling
};

BernsteinReport bernstein_check(const CutoffSpec& c, const Grid& g, double k, double p, int trials,
                                std::uint64_t seed);

struct PoincareReport {
  int trials = 0;
  std::vector<double> ratios;
  double sup_ratio = 0.0;
  double bound = 0.0;           // 1 / r1
  double witness_xi = 0.0;      // smallest grid |xi| >= r1
  double witness_ratio = 0.0;   // ||f|| / ||grad f|| for that single mode
  bool all_within_bound = true;
};

PoincareReport poincare_check(const CutoffSpec& c, const Grid& g, int trials, std::uint64_t seed);

}  // namespace parspec
