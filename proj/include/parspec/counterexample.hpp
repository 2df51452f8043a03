#pragma once

#include "parspec/decay_fit.hpp"
#include "parspec/grid.hpp"

#include <string>
#include <vector>

namespace parspec {

// f_N = sum_{k=1}^N a_k psi(x - x_k), a_k = k^{-amplitude_power}, translates
// spaced by L along x_0. psi = d/dx_0 of the C-infinity bump of the given radius,
// so its mean vanishes.
struct CounterexampleSpec {
  int N = 8;
  double L = 16.0;
  double psi_radius = 1.0;
  double psi_amplitude = 1.0;
  double amplitude_power = 1.0 / 3.0;

  void validate() const;
  double amplitude(int k) const;
};

// Long box along x_0 fitting n_max translates: spacing dx = L / steps_per_L,
// power-of-two points, transverse width `transverse` with the same spacing
// rounded to a power of two count.
Grid counterexample_grid(int n_max, const CounterexampleSpec& spec, int steps_per_L = 48, double transverse = 16.0 / 3.0);

// psi centred at lattice index `center0` along x_0 and at the origin transversally.
Field psi_field(const CounterexampleSpec& spec, const Grid& g);

// Throws BoxTooSmall when N L + 2 radius exceeds the box along x_0 or the
// transverse box cannot hold one support. Centres are snapped to grid points so
// every translate is sampled identically; the snapped spacing must keep the
// supports disjoint.
Field build_fN(const CounterexampleSpec& spec, const Grid& g);
// Snapped spacing actually used by build_fN.
double snapped_spacing(const CounterexampleSpec& spec, const Grid& g);

// ||f_N||_{L^{3,inf}} as sup_s s^{1/3} f*(s).
double fN_lorentz3(const CounterexampleSpec& spec, const Grid& g);
// The same weak norm as sup over levels of lambda d_f(lambda)^{1/p}.
double weak_norm_by_distribution(const Field& f, double p);

// Inner products of translated Littlewood-Paley blocks of psi.
struct CrossTerms {
  int j0 = 0;
  double block_sq = 0.0;             // ||Delta_j0 psi||^2
  std::vector<double> correlation;   // <Delta psi, Delta psi(. - m L e_0)> for m = 1..N-1
  double constant = 0.0;             // max_m m^2 L^2 |corr_m| / block_sq
  double main_term = 0.0;            // sum a_k^2 block_sq
  double budget = 0.0;               // sum_{k != k'} a_k a_k' |corr_{k-k'}|
  double signed_cross = 0.0;         // the same sum without absolute values
  double young_bound = 0.0;          // constant (pi^2/3) L^-2 main_term
};

// j0 < 0 picks the shell maximizing ||Delta_j psi||_{L2}.
CrossTerms cross_terms(const CounterexampleSpec& spec, const Grid& g, int j0 = -1);

struct CounterexampleRow {
  int N = 0;
  double lorentz3 = 0.0;
  double lorentz3_distribution = 0.0;
  double besov_half = 0.0;
  double block_j0 = 0.0;            // 2^{j0/2} ||Delta_j0 f_N||
  double lower_bound_ratio = 0.0;   // block_j0 / (sum a_k^2)^{1/2}
  double linf = 0.0;
  double l2_sq = 0.0;
  double cross_budget = 0.0;        // relative to the main term
  double monotone_slack = 0.0;      // besov(f_N) - besov(f_{N/2}) + budget in norm units (row > 0)
};

struct CounterexampleStudy {
  CounterexampleSpec spec;
  Grid grid;
  int j0 = 0;
  std::vector<CounterexampleRow> rows;
  DecayFit growth;            // besov_half against N
  double lorentz_spread = 0;  // max / min - 1 of lorentz3
  double cross_constant = 0;  // measured C at the largest N
  bool bounded = false;       // lorentz_spread < 0.2
};

// Runs every N on the same grid (sized for the largest N).
CounterexampleStudy fN_study(const CounterexampleSpec& spec, const std::vector<int>& Ns, const Grid& g);
DecayFit fN_besov_growth(const CounterexampleSpec& spec, const std::vector<int>& Ns, const Grid& g);

std::string to_csv(const CounterexampleStudy& s);
std::string to_json(const CounterexampleStudy& s);

// Profile v = A chi_per(|x|) / (1 + |x|) with A chosen so that both weighted
// sup norms stay within M1 and M2.
struct WeightedProfileSpec {
  double M1 = 1.0;
  double M2 = 10.0;
  void validate() const;
};

Field weighted_profile(const WeightedProfileSpec& spec, const Grid& g);

struct WeightedProfileReport {
  double half_norm = 0.0;  // sup over sampled shifts
  double small_shift_sup = 0.0;  // |h| <= 1
  double large_shift_sup = 0.0;  // |h| >= 1
  double grad_l2 = 0.0;
  double m1 = 0.0;  // measured weighted sup norms
  double m2 = 0.0;
  double constant = 0.0;  // half_norm / (grad_l2 + m1 + m2)
  double refined_half_norm = 0.0;
  double refinement_change = 0.0;
};

WeightedProfileReport weighted_profile_in_besov(const WeightedProfileSpec& spec, const Grid& g, bool refine = true);

}  // namespace parspec
