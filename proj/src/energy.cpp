#include "parspec/energy.hpp"

#include "kernel_modes.hpp"
#include "parspec/error.hpp"
#include "parspec/evolution.hpp"
#include "parspec/exec.hpp"

#include <algorithm>
#include <cmath>

namespace parspec {

void EnergyParams::validate() const {
  require(s >= 1.0, "energy index s must be >= 1");
  require(kappa >= 0.0, "energy cross weight must be nonnegative");
}

namespace {

template <class F>
double mode_sum(const SpectralField& u, F&& term) {
  const kernels::detail::FlatModes fm(u.grid);
  const std::size_t n = u.grid.spectral_size();
  const double sum = det_sum(
      n,
      [&](std::size_t idx) {
        double w, m2;
        fm.at(idx, w, m2);
        return w * term(idx, m2);
      },
      default_exec());
  return kernels::detail::parseval_scale(u.grid) * sum;
}

double energy_sq(const SpectralField& u, std::size_t idx) {
  double e = 0.0;
  for (int c = 0; c < u.components; ++c) e += std::norm(u.data[c][idx]);
  return e;
}

}  // namespace

double cns_energy(const SpectralField& u, const EnergyParams& e) {
  e.validate();
  const int n = u.grid.dim;
  require(u.components == n + 1, "CNS state needs n + 1 components");
  const kernels::detail::FlatModes fm(u.grid);
  const ModeTables& t = fm.t;
  const std::size_t s1 = t.shape[1], s2 = t.shape[2];
  return mode_sum(u, [&](std::size_t idx, double m2) {
    const double base = energy_sq(u, idx);
    const std::size_t i2 = idx % s2, i1 = (idx / s2) % s1, i0 = idx / (s1 * s2);
    const double k[3] = {t.k[0][i0], t.k[1][i1], t.k[2][i2]};
    Complex kw = 0.0;
    for (int j = 0; j < n; ++j) kw += k[j] * u.data[j + 1][idx];
    // Re(w . conj(i xi phi)) = Re(-i (xi . w) conj(phi))
    const double cross = std::real(-kI * kw * std::conj(u.data[0][idx]));
    const double wgt = std::pow(1.0 + m2, e.s - 1.0);
    return wgt * ((1.0 + m2) * base + 2.0 * e.kappa * cross);
  });
}

double cns_energy_norm_sq(const SpectralField& u, const EnergyParams& e) {
  return mode_sum(u, [&](std::size_t idx, double m2) { return std::pow(1.0 + m2, e.s) * energy_sq(u, idx); });
}

double dwe_energy(const DweParams& p, const SpectralField& U) {
  require(U.components == 2, "damped-wave state needs 2 components");
  return mode_sum(U, [&](std::size_t idx, double m2) {
    return p.mu_prime * m2 * std::norm(U.data[0][idx]) + std::norm(U.data[1][idx]);
  });
}

double dwe_energy_norm_sq(const SpectralField& U) {
  require(U.components == 2, "damped-wave state needs 2 components");
  return mode_sum(U, [&](std::size_t idx, double m2) {
    return (1.0 + m2) * std::norm(U.data[0][idx]) + std::norm(U.data[1][idx]);
  });
}

EnergySeries energy_functional(const Trajectory& tr, EnergyKind which) {
  const bool want_cns = which == EnergyKind::CnsHigh;
  require(want_cns == (tr.system == "cns"), "energy kind does not match the trajectory system");
  require(tr.energy.size() == tr.t.size() && tr.high_norm_sq.size() == tr.t.size(),
          "trajectory has no energy samples");
  EnergySeries s;
  s.t = tr.t;
  s.energy = tr.energy;
  s.norm_sq = tr.high_norm_sq;
  s.lower_ratio = INFINITY;
  s.upper_ratio = 0.0;
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    if (s.norm_sq[k] <= 0.0) continue;
    const double r = s.energy[k] / s.norm_sq[k];
    s.lower_ratio = std::min(s.lower_ratio, r);
    s.upper_ratio = std::max(s.upper_ratio, r);
  }
  if (!std::isfinite(s.lower_ratio)) s.lower_ratio = s.upper_ratio = 1.0;
  s.equivalence_constant = std::max(s.upper_ratio, 1.0 / s.lower_ratio);
  s.worst_excess = -INFINITY;
  for (std::size_t k = 0; k + 1 < s.t.size(); ++k) {
    const double ek = s.energy[k];
    if (ek <= 0.0) continue;
    const double tol = 10.0 * tr.dt_max_used * ek + 1e-12 * ek;
    const double excess = (s.energy[k + 1] - ek - tol) / ek;
    s.worst_excess = std::max(s.worst_excess, excess);
    if (excess > 0.0) s.monotone = false;
  }
  if (!std::isfinite(s.worst_excess)) s.worst_excess = 0.0;
  return s;
}

}  // namespace parspec
