#include "parspec/counterexample.hpp"

#include "parspec/cutoff.hpp"
#include "parspec/error.hpp"
#include "parspec/freq_split.hpp"
#include "parspec/norms.hpp"
#include "parspec/profile.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace parspec {

void CounterexampleSpec::validate() const {
  require(N >= 1, "counterexample needs N >= 1");
  require(L >= 1.0, "translate spacing L must be >= 1");
  require(psi_radius > 0.0, "bump radius must be positive");
  require(L > 2.0 * psi_radius, "spacing must exceed the support diameter");
  require(amplitude_power >= 0.0, "amplitude power must be nonnegative");
}

double CounterexampleSpec::amplitude(int k) const { return std::pow(static_cast<double>(k), -amplitude_power); }

namespace {

int next_pow2(double x) {
  int p = 2;
  while (p < x) p *= 2;
  return p;
}

// d/dx_0 of exp(-1 / (1 - r^2 / R^2)) for r < R
double psi_value(const CounterexampleSpec& s, double x0, double x1, double x2) {
  const double R2 = s.psi_radius * s.psi_radius;
  const double q = (x0 * x0 + x1 * x1 + x2 * x2) / R2;
  if (q >= 1.0) return 0.0;
  const double d = 1.0 - q;
  return s.psi_amplitude * std::exp(-1.0 / d) * (-2.0 * x0 / R2) / (d * d);
}

void check_box(const CounterexampleSpec& s, const Grid& g) {
  s.validate();
  g.validate();
  require(g.dim == 3, "the counterexample lives in three dimensions");
  if (s.N * s.L + 2.0 * s.psi_radius > g.length[0])
    raise(ErrorCode::BoxTooSmall, "box along x_0 cannot hold N translates: N L + 2 R > length");
  for (int a = 1; a < 3; ++a)
    if (g.length[a] <= 2.0 * s.psi_radius + 2.0 * g.spacing(a))
      raise(ErrorCode::BoxTooSmall, "transverse box cannot hold the bump support");
}

long step_index(const CounterexampleSpec& s, const Grid& g) { return std::lround(s.L / g.spacing(0)); }

// lattice index of the k-th centre along x_0 (k = 1..N), centred in the box
long centre_index(const CounterexampleSpec& s, const Grid& g, int k) {
  const long step = step_index(s, g);
  const long mid = g.points[0] / 2;
  // offset of k from the middle of 1..N, in steps; twice it is an integer
  const long twice = 2L * k - (s.N + 1);
  return mid + (twice * step) / 2;
}

// add a * psi centred at index c0 along x_0 and the origin transversally
void add_psi(const CounterexampleSpec& s, const Grid& g, long c0, double a, Field& f) {
  const double dx = g.spacing(0);
  const long w = static_cast<long>(std::ceil(s.psi_radius / dx)) + 1;
  const int n1 = g.points[1], n2 = g.points[2];
  for (long i0 = std::max(0L, c0 - w); i0 <= std::min<long>(g.points[0] - 1, c0 + w); ++i0) {
    const double x0 = (i0 - c0) * dx;
    for (int i1 = 0; i1 < n1; ++i1)
      for (int i2 = 0; i2 < n2; ++i2) {
        const double v = psi_value(s, x0, g.coord(1, i1), g.coord(2, i2));
        if (v != 0.0) f[0][(static_cast<std::size_t>(i0) * n1 + i1) * n2 + i2] += a * v;
      }
  }
}

// Parseval-scaled sum over transverse modes of phi_j^2 |psi^|^2, per x_0 wavenumber index
std::vector<double> block_power(const SpectralField& ps, int j) {
  const Grid& g = ps.grid;
  const ModeTables t(g);
  std::vector<double> P(t.shape[0], 0.0);
  const double scale = g.cell_volume() / static_cast<double>(g.size());
  std::size_t idx = 0;
  for (int i0 = 0; i0 < t.shape[0]; ++i0)
    for (int i1 = 0; i1 < t.shape[1]; ++i1)
      for (int i2 = 0; i2 < t.shape[2]; ++i2, ++idx) {
        const double r = std::sqrt(t.k[0][i0] * t.k[0][i0] + t.k[1][i1] * t.k[1][i1] + t.k[2][i2] * t.k[2][i2]);
        if (r == 0.0) continue;
        const double phi = lp_phi_j(j, r);
        if (phi == 0.0) continue;
        P[i0] += t.weight(i2) * phi * phi * std::norm(ps.data[0][idx]) * scale;
      }
  return P;
}

double pair_sum(const CounterexampleSpec& s, int N, const std::vector<double>& corr, bool absolute) {
  double total = 0.0;
  for (int m = 1; m < N; ++m) {
    double aa = 0.0;
    for (int k = 1; k + m <= N; ++k) aa += s.amplitude(k) * s.amplitude(k + m);
    total += 2.0 * aa * (absolute ? std::abs(corr[m - 1]) : corr[m - 1]);
  }
  return total;
}

double sum_sq_amplitudes(const CounterexampleSpec& s, int N) {
  double t = 0.0;
  for (int k = 1; k <= N; ++k) t += s.amplitude(k) * s.amplitude(k);
  return t;
}

}  // namespace

Grid counterexample_grid(int n_max, const CounterexampleSpec& spec, int steps_per_L, double transverse) {
  require(n_max >= 1 && steps_per_L >= 4, "grid needs n_max >= 1 and at least 4 steps per spacing");
  const double dx = spec.L / steps_per_L;
  const int p0 = next_pow2((n_max * spec.L + 2.0 * spec.psi_radius) / dx + 1.0);
  const int pt = next_pow2(transverse / dx - 1e-9);
  return Grid::box(3, {p0, pt, pt}, {p0 * dx, pt * dx, pt * dx});
}

Field psi_field(const CounterexampleSpec& spec, const Grid& g) {
  CounterexampleSpec one = spec;
  one.N = 1;
  check_box(one, g);
  Field f(g, 1);
  add_psi(spec, g, g.points[0] / 2, 1.0, f);
  return f;
}

double snapped_spacing(const CounterexampleSpec& spec, const Grid& g) { return step_index(spec, g) * g.spacing(0); }

Field build_fN(const CounterexampleSpec& spec, const Grid& g) {
  check_box(spec, g);
  const double S = snapped_spacing(spec, g);
  if (S <= 2.0 * spec.psi_radius + 2.0 * g.spacing(0))
    raise(ErrorCode::BoxTooSmall, "grid too coarse: snapped spacing does not separate the supports");
  Field f(g, 1);
  for (int k = 1; k <= spec.N; ++k) add_psi(spec, g, centre_index(spec, g, k), spec.amplitude(k), f);
  // adjacent translates must not overlap on the grid
  if (spec.N > 1) {
    Field a(g, 1), b(g, 1);
    add_psi(spec, g, centre_index(spec, g, 1), 1.0, a);
    add_psi(spec, g, centre_index(spec, g, 2), 1.0, b);
    double overlap = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) overlap += std::abs(a[0][i] * b[0][i]);
    require(overlap == 0.0, "translates overlap on the grid");
  }
  return f;
}

double fN_lorentz3(const CounterexampleSpec& spec, const Grid& g) {
  return lorentz_norm(build_fN(spec, g), LorentzExp{3.0, INFINITY});
}

double weak_norm_by_distribution(const Field& f, double p) {
  require(p >= 1.0 && std::isfinite(p), "weak norm exponent must be finite and >= 1");
  std::vector<double> m = magnitudes(f);
  std::sort(m.begin(), m.end());
  const double cell = f.grid.cell_volume();
  const std::size_t n = m.size();
  double best = 0.0;
  // levels just below each distinct value: d = |{|f| >= v}|
  std::size_t i = n;
  while (i > 0) {
    const double v = m[i - 1];
    if (v == 0.0) break;
    std::size_t j = i - 1;
    while (j > 0 && m[j - 1] == v) --j;
    const double d = static_cast<double>(n - j) * cell;
    best = std::max(best, v * std::pow(d, 1.0 / p));
    i = j;
  }
  return best;
}

CrossTerms cross_terms(const CounterexampleSpec& spec, const Grid& g, int j0) {
  check_box(spec, g);
  const SpectralField ps = to_spectral(psi_field(spec, g));
  CrossTerms c;
  if (j0 < 0) {
    const BesovProfile bp = besov_profile(ps, 0.0);
    std::size_t best = 0;
    for (std::size_t i = 1; i < bp.block_l2.size(); ++i)
      if (bp.block_l2[i] > bp.block_l2[best]) best = i;
    j0 = bp.j[best];
  }
  c.j0 = j0;
  const std::vector<double> P = block_power(ps, j0);
  const auto k0 = g.wavenumbers(0);
  for (double v : P) c.block_sq += v;
  const double S = snapped_spacing(spec, g);
  const double L = spec.L;
  for (int m = 1; m < spec.N; ++m) {
    double corr = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i)
      if (P[i] != 0.0) corr += P[i] * std::cos(k0[i] * m * S);
    c.correlation.push_back(corr);
    c.constant = std::max(c.constant, m * m * L * L * std::abs(corr) / c.block_sq);
  }
  c.main_term = sum_sq_amplitudes(spec, spec.N) * c.block_sq;
  c.budget = pair_sum(spec, spec.N, c.correlation, true);
  c.signed_cross = pair_sum(spec, spec.N, c.correlation, false);
  c.young_bound = c.constant * (kPi * kPi / 3.0) / (L * L) * c.main_term;
  return c;
}

CounterexampleStudy fN_study(const CounterexampleSpec& spec, const std::vector<int>& Ns, const Grid& g) {
  require(!Ns.empty(), "need at least one N");
  require(std::is_sorted(Ns.begin(), Ns.end()), "N list must be increasing");
  CounterexampleStudy st;
  st.spec = spec;
  st.grid = g;
  CounterexampleSpec big = spec;
  big.N = Ns.back();
  const CrossTerms ct = cross_terms(big, g);
  st.j0 = ct.j0;
  st.cross_constant = ct.constant;
  const double wj = std::pow(2.0, 0.5 * ct.j0);
  Series growth;
  double lo = INFINITY, hi = 0.0;
  for (std::size_t r = 0; r < Ns.size(); ++r) {
    CounterexampleSpec s = spec;
    s.N = Ns[r];
    const Field f = build_fN(s, g);
    CounterexampleRow row;
    row.N = s.N;
    row.lorentz3 = lorentz_norm(f, LorentzExp{3.0, INFINITY});
    row.lorentz3_distribution = weak_norm_by_distribution(f, 3.0);
    const BesovProfile bp = besov_profile(to_spectral(f), 0.5);
    row.besov_half = bp.value;
    for (std::size_t i = 0; i < bp.j.size(); ++i)
      if (bp.j[i] == ct.j0) row.block_j0 = wj * bp.block_l2[i];
    const double a2 = sum_sq_amplitudes(s, s.N);
    row.lower_bound_ratio = row.block_j0 / std::sqrt(a2);
    row.linf = lp_norm(f, INFINITY);
    row.l2_sq = physical_l2_sq(f);
    const double budget = pair_sum(s, s.N, ct.correlation, true);
    row.cross_budget = budget / (a2 * ct.block_sq);
    if (r > 0 && Ns[r] == 2 * Ns[r - 1])
      row.monotone_slack = row.besov_half - st.rows.back().besov_half + wj * std::sqrt(budget);
    st.rows.push_back(row);
    growth.emplace_back(s.N, row.besov_half);
    lo = std::min(lo, row.lorentz3);
    hi = std::max(hi, row.lorentz3);
  }
  st.growth = loglog_fit(growth);
  st.lorentz_spread = hi / lo - 1.0;
  st.bounded = st.lorentz_spread < 0.2;
  return st;
}

DecayFit fN_besov_growth(const CounterexampleSpec& spec, const std::vector<int>& Ns, const Grid& g) {
  return fN_study(spec, Ns, g).growth;
}

std::string to_csv(const CounterexampleStudy& s) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "N,lorentz3,besov_half\n";
  for (const auto& r : s.rows) os << r.N << ',' << r.lorentz3 << ',' << r.besov_half << "\n";
  return os.str();
}

std::string to_json(const CounterexampleStudy& s) {
  nlohmann::ordered_json j;
  j["N"] = nlohmann::json::array();
  for (const auto& r : s.rows) {
    nlohmann::ordered_json row;
    row["N"] = r.N;
    row["lorentz3"] = r.lorentz3;
    row["lorentz3_distribution"] = r.lorentz3_distribution;
    row["besov_half"] = r.besov_half;
    row["block_j0"] = r.block_j0;
    row["lower_bound_ratio"] = r.lower_bound_ratio;
    row["cross_budget_rel"] = r.cross_budget;
    row["monotone_slack"] = r.monotone_slack;
    j["N"].push_back(row);
  }
  j["j0"] = s.j0;
  j["bounded"] = s.bounded;
  j["lorentz_spread"] = s.lorentz_spread;
  j["growth_exponent"] = s.growth.exponent;
  j["growth_ci95"] = {s.growth.exponent - 1.96 * s.growth.stderr_exponent,
                      s.growth.exponent + 1.96 * s.growth.stderr_exponent};
  j["growth_r2"] = s.growth.r2;
  j["cross_constant"] = s.cross_constant;
  return j.dump(2);
}

void WeightedProfileSpec::validate() const { require(M1 > 0.0 && M2 > 0.0, "weighted bounds must be positive"); }

namespace {

Field unit_weighted_shape(const Grid& g) {
  double L = g.length[0];
  for (int a = 1; a < g.dim; ++a) L = std::min(L, g.length[a]);
  Field f(g, 1);
  std::size_t idx = 0;
  for (int i0 = 0; i0 < g.points[0]; ++i0)
    for (int i1 = 0; i1 < g.points[1]; ++i1)
      for (int i2 = 0; i2 < g.points[2]; ++i2, ++idx) {
        const int ii[3] = {i0, i1, i2};
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) r2 += g.coord(a, ii[a]) * g.coord(a, ii[a]);
        const double r = std::sqrt(r2);
        f[0][idx] = periodizing_cutoff(r, L) / (1.0 + r);
      }
  return f;
}

Field grad(const Field& v) { return to_physical(gradient(to_spectral(v), 0)); }

}  // namespace

Field weighted_profile(const WeightedProfileSpec& spec, const Grid& g) {
  spec.validate();
  g.validate();
  Field v = unit_weighted_shape(g);
  const double m1 = weighted_linf_norm(v, 1.0), m2 = weighted_linf_norm(grad(v), 2.0);
  const double A = std::min(spec.M1 / m1, spec.M2 / m2);
  for (double& x : v[0]) x *= A;
  return v;
}

WeightedProfileReport weighted_profile_in_besov(const WeightedProfileSpec& spec, const Grid& g, bool refine) {
  const Field v = weighted_profile(spec, g);
  WeightedProfileReport r;
  const FdBesovReport fd = besov_fd_report(v, 0.5);
  r.half_norm = fd.value;
  for (std::size_t i = 0; i < fd.h.size(); ++i) {
    if (fd.h[i] <= 1.0) r.small_shift_sup = std::max(r.small_shift_sup, fd.ratio[i]);
    if (fd.h[i] >= 1.0) r.large_shift_sup = std::max(r.large_shift_sup, fd.ratio[i]);
  }
  const Field gv = grad(v);
  r.grad_l2 = std::sqrt(physical_l2_sq(gv));
  r.m1 = weighted_linf_norm(v, 1.0);
  r.m2 = weighted_linf_norm(gv, 2.0);
  const double denom = r.grad_l2 + r.m1 + r.m2;
  r.constant = denom > 0.0 ? r.half_norm / denom : 0.0;
  if (refine) {
    r.refined_half_norm = besov_halfnorm_fd(weighted_profile(spec, g.refined(2)), 0.5);
    r.refinement_change = r.half_norm > 0.0 ? std::abs(r.refined_half_norm - r.half_norm) / r.half_norm : 0.0;
  }
  return r;
}

}  // namespace parspec
