#include "parspec/profile.hpp"

#include "parspec/cutoff.hpp"
#include "parspec/error.hpp"
#include "parspec/freq_split.hpp"
#include "parspec/norms.hpp"

#include <algorithm>
#include <cmath>

namespace parspec {

const char* profile_kind_name(ProfileKind k) {
  return k == ProfileKind::CnsStationary ? "cns_stationary" : "dwe_coefficients";
}

void ProfileOptions::validate() const {
  require(epsilon >= 0.0 && epsilon <= 0.1, "profile epsilon must lie in [0, 0.1]");
  require(sobolev_s >= 0.0, "sobolev index must be nonnegative");
  require(p0 >= 2.0 && std::isfinite(p0), "p0 must be in [2, inf)");
}

double SyntheticProfile::invariant(const std::string& name) const {
  for (const auto& [k, v] : invariants)
    if (k == name) return v;
  raise(ErrorCode::InvalidArgument, "unknown profile invariant: " + name);
}

double periodizing_cutoff(double r, double L) { return 1.0 - smooth_step((r - 0.35 * L) / (0.1 * L)); }

namespace {

double min_length(const Grid& g) {
  double L = g.length[0];
  for (int a = 1; a < g.dim; ++a) L = std::min(L, g.length[a]);
  return L;
}

// Fill comps by fn(x, out) at every grid point.
template <class Fn>
Field sample(const Grid& g, int comps, Fn&& fn) {
  Field f(g, comps);
  std::vector<double> out(comps);
  std::size_t idx = 0;
  for (int i0 = 0; i0 < g.points[0]; ++i0)
    for (int i1 = 0; i1 < g.points[1]; ++i1)
      for (int i2 = 0; i2 < g.points[2]; ++i2, ++idx) {
        const int ii[3] = {i0, i1, i2};
        double x[3] = {0.0, 0.0, 0.0};
        for (int a = 0; a < g.dim; ++a) x[a] = g.coord(a, ii[a]);
        fn(x, out.data());
        for (int c = 0; c < comps; ++c) f[c][idx] = out[c];
      }
  return f;
}

double radius(const double* x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

// Gradient of every component: output component c * dim + j is d_j f_c.
Field grad_all(const Field& f) {
  const int n = f.grid.dim;
  const SpectralField s = to_spectral(f);
  SpectralField out(f.grid, f.components * n);
  for (int c = 0; c < f.components; ++c)
    for (int j = 0; j < n; ++j) out[c * n + j] = partial(s, c, j)[0];
  return to_physical(out);
}

// Nyquist modes are dropped first: their derivative symbols are zeroed, so the
// projection could not remove their divergence anyway.
void band_limit(Field& f) {
  SpectralField s = to_spectral(f);
  drop_nyquist(s);
  f = to_physical(s);
}

void make_solenoidal(Field& w) {
  SpectralField s = to_spectral(w);
  drop_nyquist(s);
  const int n = w.grid.dim;
  for_each_mode(w.grid, [&](std::size_t idx, const double* k, double, bool) {
    double m2 = 0.0;
    for (int a = 0; a < n; ++a) m2 += k[a] * k[a];
    if (m2 == 0.0) return;
    Complex dot = 0.0;
    for (int a = 0; a < n; ++a) dot += k[a] * s[a][idx];
    for (int a = 0; a < n; ++a) s[a][idx] -= k[a] * dot / m2;
  });
  w = to_physical(s);
}

Field stack(const Field& a, const Field& b) {
  Field out(a.grid, a.components + b.components);
  for (int c = 0; c < a.components; ++c) out[c] = a[c];
  for (int c = 0; c < b.components; ++c) out[a.components + c] = b[c];
  return out;
}

void scale_field(Field& f, double s) {
  for (auto& arr : f.data)
    for (double& v : arr) v *= s;
}

std::array<double, 3> unit_dir(int n, std::array<double, 3> d) {
  double m = 0.0;
  for (int a = 0; a < n; ++a) m += d[a] * d[a];
  m = std::sqrt(m);
  for (int a = 0; a < 3; ++a) d[a] = a < n ? d[a] / m : 0.0;
  return d;
}

double lorentz_weak(const Field& f, double p) { return lorentz_norm(f, LorentzExp{p, INFINITY}); }

void check_grid(const Grid& g) {
  g.validate();
  require(g.dim == 2 || g.dim == 3, "synthetic profiles need dimension 2 or 3");
}

}  // namespace

SyntheticProfile make_cns_profile(const Grid& g, const ProfileOptions& o) {
  check_grid(g);
  o.validate();
  const int n = g.dim;
  const double L = min_length(g);
  const auto d = unit_dir(n, {1.0, 1.0, 1.0});

  SyntheticProfile p;
  p.kind = ProfileKind::CnsStationary;
  p.epsilon = o.epsilon;
  p.grid = g;
  p.phi = sample(g, 1, [&](const double* x, double* out) {
    const double r = radius(x);
    out[0] = periodizing_cutoff(r, L) / std::sqrt(1.0 + r * r);
  });
  // swirl (d x x) g(|x|) is divergence-free; projection removes the sampling residue
  p.w = sample(g, n, [&](const double* x, double* out) {
    const double r = radius(x);
    const double gr = periodizing_cutoff(r, L) / (1.0 + r * r);
    if (n == 3) {
      out[0] = (d[1] * x[2] - d[2] * x[1]) * gr;
      out[1] = (d[2] * x[0] - d[0] * x[2]) * gr;
      out[2] = (d[0] * x[1] - d[1] * x[0]) * gr;
    } else {
      out[0] = -x[1] * gr;
      out[1] = x[0] * gr;
    }
  });
  band_limit(p.phi);
  make_solenoidal(p.w);

  const Field u = stack(p.phi, p.w);
  const Field gu = grad_all(u);
  Field gphi(g, n), gw(g, n * n);
  for (int j = 0; j < n; ++j) gphi[j] = gu[j];
  for (int c = 0; c < n * n; ++c) gw[c] = gu[n + c];

  const double wl_phi = weighted_linf_norm(p.phi, 1.0);
  const double wl_gphi = weighted_linf_norm(gphi, 2.0);
  const double wl_w = weighted_linf_norm(p.w, 1.0);
  const double wl_gw = weighted_linf_norm(gw, 2.0);
  const double lz_u = lorentz_weak(u, n);
  const double lz_gu = lorentz_weak(gu, 0.5 * n);
  const double hs_gu = sobolev_norm(to_spectral(gu), o.sobolev_s);
  const double unit_small = lz_u + lz_gu + hs_gu;
  const double worst = std::max({unit_small, wl_phi, wl_gphi, wl_w, wl_gw});

  const double a = o.epsilon / worst;
  p.amplitude = a;
  scale_field(p.phi, a);
  scale_field(p.w, a);
  p.smallness = a * unit_small;
  p.invariants = {
      {"weighted_linf(phi,1)", a * wl_phi},
      {"weighted_linf(grad phi,2)", a * wl_gphi},
      {"weighted_linf(w,1)", a * wl_w},
      {"weighted_linf(grad w,2)", a * wl_gw},
      {"lorentz(u,(n,inf))", a * lz_u},
      {"lorentz(grad u,(n/2,inf))", a * lz_gu},
      {"Hs(grad u)", a * hs_gu},
      {"sup|phi|", lp_norm(p.phi, INFINITY)},
  };
  return p;
}

SyntheticProfile make_dwe_profile(const Grid& g, const ProfileOptions& o) {
  check_grid(g);
  o.validate();
  const int n = g.dim;
  const double L = min_length(g);
  const auto d1 = unit_dir(n, {1.0, 1.0, 1.0});
  const auto d2 = unit_dir(n, {1.0, -1.0, 1.0});

  auto shape = [&](const double* x) {
    const double r = radius(x);
    return periodizing_cutoff(r, L) / std::sqrt(1.0 + r * r);
  };
  SyntheticProfile p;
  p.kind = ProfileKind::DweCoefficients;
  p.epsilon = o.epsilon;
  p.grid = g;
  p.b1 = sample(g, n, [&](const double* x, double* out) {
    const double s = shape(x);
    for (int a = 0; a < n; ++a) out[a] = d1[a] * s;
  });
  p.b2 = sample(g, n, [&](const double* x, double* out) {
    const double s = shape(x);
    for (int a = 0; a < n; ++a) out[a] = d2[a] * s;
  });
  p.b3 = sample(g, 1, [&](const double* x, double* out) { out[0] = shape(x); });
  band_limit(p.b1);
  band_limit(p.b2);
  band_limit(p.b3);

  const Field g1 = grad_all(p.b1), g2 = grad_all(p.b2), g3 = grad_all(p.b3);
  const double l1 = lorentz_weak(p.b1, n) + lorentz_weak(g1, 0.5 * n);
  const double l2 = lorentz_weak(p.b2, n) + lorentz_weak(g2, 0.5 * n);
  const double l3 = lorentz_weak(p.b3, n) + lorentz_weak(g3, 0.5 * n);
  const double lp0 = lp_norm(stack(stack(stack(g1, p.b2), p.b3), g3), o.p0);
  const double w1inf = lp_norm(p.b3, INFINITY) + lp_norm(g3, INFINITY);
  const double unit_small = l1 + l2 + l3 + lp0 + w1inf;

  const double a = o.epsilon / unit_small;
  p.amplitude = a;
  scale_field(p.b1, a);
  scale_field(p.b2, a);
  scale_field(p.b3, a);
  p.smallness = a * unit_small;
  p.invariants = {
      {"lorentz(b1)+lorentz(grad b1)", a * l1},
      {"lorentz(b2)+lorentz(grad b2)", a * l2},
      {"lorentz(b3)+lorentz(grad b3)", a * l3},
      {"Lp0(grad b1,b2,b3,grad b3)", a * lp0},
      {"W1inf(b3)", a * w1inf},
  };
  return p;
}

SyntheticProfile scaled(const SyntheticProfile& p, double s) {
  SyntheticProfile q = p;
  for (Field* f : {&q.phi, &q.w, &q.b1, &q.b2, &q.b3}) scale_field(*f, s);
  q.epsilon *= std::abs(s);
  q.amplitude *= s;
  q.smallness *= std::abs(s);
  for (auto& kv : q.invariants) kv.second *= std::abs(s);
  return q;
}

}  // namespace parspec
