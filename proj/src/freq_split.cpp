#include "parspec/freq_split.hpp"

#include "parspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parspec {

namespace {


void check_nyquist(const Grid& g, const CutoffSpec& c) {
  c.validate();
  if (g.nyquist() <= c.r_infty())
    raise(ErrorCode::NyquistViolation, "grid Nyquist frequency must exceed r_infty of the cutoff");
}

template <class M>
SpectralField multiply(const SpectralField& f, M&& mult) {
  SpectralField out = f;
  for_each_mode(f.grid, [&](std::size_t idx, const double* k, double, bool nyq) {
    const double m = mult(k, nyq);
    for (int c = 0; c < f.components; ++c) out.data[c][idx] *= m;
  });
  return out;
}

double mag(const double* k) { return std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]); }

}  // namespace

SpectralField project_low(const SpectralField& f, const CutoffSpec& c) {
  check_nyquist(f.grid, c);
  const int d = f.grid.dim;
  SpectralField out = multiply(f, [&](const double* k, bool) { return chi_low(c, k, d); });
  out.support = Support::Low;
  return out;
}

SpectralField project_high(const SpectralField& f, const CutoffSpec& c) {
  check_nyquist(f.grid, c);
  const int d = f.grid.dim;
  SpectralField out = multiply(f, [&](const double* k, bool) { return chi_high(c, k, d); });
  out.support = Support::High;
  return out;
}

Field project_low(const Field& f, const CutoffSpec& c) { return to_physical(project_low(to_spectral(f), c)); }
Field project_high(const Field& f, const CutoffSpec& c) { return to_physical(project_high(to_spectral(f), c)); }

SpectralField fractional_laplacian(const SpectralField& f, double s) {
  require(std::isfinite(s), "exponent must be finite");
  if (s == 0.0) return f;
  if (s < 0.0) {
    const double n = static_cast<double>(f.grid.size());
    for (int c = 0; c < f.components; ++c)
      if (std::abs(f.data[c][0]) / n > 1e-12)
        raise(ErrorCode::ZeroModeSingularity, "negative power of the Laplacian needs a zero-mean field");
  }
  return multiply(f, [&](const double* k, bool) {
    const double m = mag(k);
    return m == 0.0 ? 0.0 : std::pow(m, 2.0 * s);
  });
}

Field fractional_laplacian(const Field& f, double s) { return to_physical(fractional_laplacian(to_spectral(f), s)); }

SpectralField partial(const SpectralField& f, int comp, int axis) {
  require(axis >= 0 && axis < f.grid.dim, "derivative axis out of range");
  SpectralField out(f.grid, 1, f.support);
  const ModeTables t(f.grid);
  std::size_t idx = 0;
  const auto& src = f.data[comp];
  auto& dst = out.data[0];
  for (int i0 = 0; i0 < t.shape[0]; ++i0)
    for (int i1 = 0; i1 < t.shape[1]; ++i1)
      for (int i2 = 0; i2 < t.shape[2]; ++i2, ++idx) {
        const int ia = axis == 0 ? i0 : (axis == 1 ? i1 : i2);
        const double k = t.k[axis][ia];
        dst[idx] = ia == t.nyq_index[axis] ? Complex(0.0) : kI * k * src[idx];
      }
  return out;
}

SpectralField gradient(const SpectralField& f, int comp) {
  SpectralField out(f.grid, f.grid.dim, f.support);
  for (int a = 0; a < f.grid.dim; ++a) out.data[a] = std::move(partial(f, comp, a).data[0]);
  return out;
}

SpectralField divergence(const SpectralField& f, int first) {
  require(first + f.grid.dim <= f.components, "not enough components for a divergence");
  SpectralField out(f.grid, 1, f.support);
  for (int a = 0; a < f.grid.dim; ++a) {
    const SpectralField d = partial(f, first + a, a);
    for (std::size_t i = 0; i < d.data[0].size(); ++i) out.data[0][i] += d.data[0][i];
  }
  return out;
}

SpectralField laplacian(const SpectralField& f, int comp) {
  SpectralField out(f.grid, 1, f.support);
  for_each_mode(f.grid, [&](std::size_t idx, const double* k, double, bool) {
    out.data[0][idx] = -(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) * f.data[comp][idx];
  });
  return out;
}

void drop_nyquist(SpectralField& f) {
  for_each_mode(f.grid, [&](std::size_t idx, const double*, double, bool nyq) {
    if (nyq)
      for (int c = 0; c < f.components; ++c) f.data[c][idx] = 0.0;
  });
}

SpectralField random_band_limited(const Grid& g, int comps, double cap, std::mt19937_64& rng, double decay) {
  SpectralField out(g, comps);
  const int d = g.dim;
  std::array<int, 3> mmax{0, 0, 0};
  for (int a = 0; a < d; ++a) {
    mmax[a] = static_cast<int>(std::floor(cap / g.dk(a)));
    require(mmax[a] < g.points[a] / 2, "band limit must stay below the Nyquist index");
  }
  const auto shape = g.spectral_shape();
  const int la = d - 1;
  auto index_of = [&](std::array<int, 3> m) {
    std::array<int, 3> i{0, 0, 0};
    for (int a = 0; a < d; ++a) i[a] = m[a] >= 0 ? m[a] : m[a] + g.points[a];
    return (static_cast<std::size_t>(i[0]) * shape[1] + i[1]) * shape[2] + i[2];
  };
  std::normal_distribution<double> nd(0.0, 1.0);
  const double scale = static_cast<double>(g.size());
  for (int c = 0; c < comps; ++c) {
    for (int m0 = -mmax[0]; m0 <= mmax[0]; ++m0)
      for (int m1 = -mmax[1]; m1 <= mmax[1]; ++m1)
        for (int m2 = -mmax[2]; m2 <= mmax[2]; ++m2) {
          std::array<int, 3> m{m0, m1, m2};
          // canonical half space: last active axis > 0, or = 0 with lexicographically positive rest
          bool keep = m[la] > 0;
          if (m[la] == 0) {
            keep = false;
            for (int a = 0; a < la; ++a) {
              if (m[a] != 0) {
                keep = m[a] > 0;
                break;
              }
            }
          }
          const bool zero = m0 == 0 && m1 == 0 && m2 == 0;
          if (!keep && !zero) continue;
          const double re = nd(rng), im = nd(rng);
          double kk = 0.0;
          for (int a = 0; a < d; ++a) kk += std::pow(m[a] * g.dk(a), 2);
          const double amp = scale * std::pow(1.0 + kk, -0.5 * decay);
          if (zero) {
            out.data[c][0] = amp * re;
            continue;
          }
          const Complex v = amp * Complex(re, im);
          out.data[c][index_of(m)] = v;
          if (m[la] == 0) {
            std::array<int, 3> mm{-m0, -m1, -m2};
            out.data[c][index_of(mm)] = std::conj(v);
          }
        }
  }
  return out;
}

Field cosine_mode(const Grid& g, std::array<int, 3> m, double amplitude) {
  Field f(g, 1);
  std::size_t idx = 0;
  for (int i0 = 0; i0 < g.points[0]; ++i0)
    for (int i1 = 0; i1 < g.points[1]; ++i1)
      for (int i2 = 0; i2 < g.points[2]; ++i2, ++idx) {
        double ph = 0.0;
        const int ii[3] = {i0, i1, i2};
        for (int a = 0; a < g.dim; ++a) ph += m[a] * g.dk(a) * g.coord(a, ii[a]);
        f.data[0][idx] = amplitude * std::cos(ph);
      }
  return f;
}

double lp_norm(const Field& f, double p) {
  require(p >= 1.0, "L^p needs p >= 1");
  const std::size_t n = f.grid.size();
  auto magv = [&](std::size_t i) {
    if (f.components == 1) return std::abs(f.data[0][i]);
    double s = 0.0;
    for (int c = 0; c < f.components; ++c) s += f.data[c][i] * f.data[c][i];
    return std::sqrt(s);
  };
  if (std::isinf(p)) return det_max(n, magv, default_exec());
  const double s = det_sum(n, [&](std::size_t i) { return std::pow(magv(i), p); }, default_exec());
  return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

BernsteinReport bernstein_check(const CutoffSpec& c, const Grid& g, double k, double p, int trials,
                                std::uint64_t seed) {
  require(k > 0.0 && p > 1.0 && std::isfinite(p) && trials >= 1, "bernstein_check: bad arguments");
  check_nyquist(g, c);
  BernsteinReport rep;
  rep.k = k;
  rep.p = p;
  rep.trials = trials;
  const int d = g.dim;
  for_each_mode(g, [&](std::size_t, const double* kv, double, bool) {
    rep.multiplier_bound = std::max(rep.multiplier_bound, std::pow(mag(kv), k) * chi_low(c, kv, d));
  });
  const double cap = std::min(2.0 * c.rinfp, 0.9 * g.nyquist());
  auto run = [&](const Grid& grid) {
    std::mt19937_64 rng(seed);
    std::vector<double> ratios;
    for (int t = 0; t < trials; ++t) {
      const SpectralField fh = random_band_limited(grid, 1, cap, rng, 0.0);
      const Field f = to_physical(fh);
      const Field num = to_physical(fractional_laplacian(project_low(fh, c), 0.5 * k));
      ratios.push_back(lp_norm(num, p) / lp_norm(f, p));
    }
    return ratios;
  };
  rep.ratios = run(g);
  rep.sup_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  const std::vector<double> fine = run(g.refined(2));
  rep.refined_sup = *std::max_element(fine.begin(), fine.end());
  rep.refinement_change = std::abs(rep.refined_sup - rep.sup_ratio) / rep.sup_ratio;
  return rep;
}

PoincareReport poincare_check(const CutoffSpec& c, const Grid& g, int trials, std::uint64_t seed) {
  require(trials >= 1, "poincare_check: trials must be positive");
  c.validate();
  PoincareReport rep;
  rep.trials = trials;
  const double r1 = c.r1();
  rep.bound = 1.0 / r1;
  require(g.nyquist() > r1, "grid cannot resolve r1");
  std::mt19937_64 rng(seed);
  const double cap = std::min(3.0 * r1, 0.9 * g.nyquist());
  for (int t = 0; t < trials; ++t) {
    SpectralField fh = random_band_limited(g, 1, cap, rng, 0.0);
    for_each_mode(g, [&](std::size_t idx, const double* k, double, bool) {
      if (mag(k) < r1) fh.data[0][idx] = 0.0;
    });
    fh.support = Support::High;
    const double num = std::sqrt(spectral_l2_sq(fh));
    const double den = std::sqrt(spectral_l2_sq(gradient(fh)));
    const double r = num / den;
    rep.ratios.push_back(r);
    rep.sup_ratio = std::max(rep.sup_ratio, r);
    if (r > rep.bound * (1.0 + 1e-12)) rep.all_within_bound = false;
  }
  // sharpness witness: smallest axis mode with |xi| >= r1
  const int m = static_cast<int>(std::ceil(r1 / g.dk(0) - 1e-9));
  std::array<int, 3> mv{m, 0, 0};
  const Field w = cosine_mode(g, mv);
  const SpectralField wh = to_spectral(w);
  rep.witness_xi = m * g.dk(0);
  rep.witness_ratio = std::sqrt(spectral_l2_sq(wh) / spectral_l2_sq(gradient(wh)));
  return rep;
}

}  // namespace parspec
