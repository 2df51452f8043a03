#pragma once

// Per-mode bodies shared by the serial and OpenMP kernel loops.

#include "parspec/error.hpp"
#include "parspec/grid.hpp"
#include "parspec/resolvent.hpp"
#include "parspec/symbol.hpp"

#include <cmath>

namespace parspec::kernels::detail {

inline constexpr int kMaxComps = 4;

inline void check_cns(const ModelParams& p, const SpectralField& u) {
  require(p.n == u.grid.dim, "model dimension must match the grid");
  require(u.components == p.n + 1, "CNS state needs n + 1 components");
}

inline void check_dwe(const DweParams& p, const SpectralField& u) {
  require(p.n == u.grid.dim, "model dimension must match the grid");
  require(u.components == 2, "damped-wave state needs 2 components");
}

inline double mag(const double* kv) { return std::sqrt(kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2]); }

inline void gather(const SpectralField& u, std::size_t idx, Complex* b) {
  for (int c = 0; c < u.components; ++c) b[c] = u.data[c][idx];
}
inline void scatter(SpectralField& u, std::size_t idx, const Complex* b) {
  for (int c = 0; c < u.components; ++c) u.data[c][idx] = b[c];
}

inline void cns_propagate(const ModelParams& p, ModeFunction kind, double t, SpectralField& u, std::size_t idx,
                          const double* kv) {
  Complex b[kMaxComps];
  gather(u, idx, b);
  cns_apply_mode(p, kv, kind, t, b);
  scatter(u, idx, b);
}

inline void dwe_propagate(const DweParams& p, ModeFunction kind, double t, SpectralField& u, std::size_t idx,
                          const double* kv) {
  Complex b[2] = {u.data[0][idx], u.data[1][idx]};
  dwe_apply_mode(p, mag(kv), kind, t, b);
  u.data[0][idx] = b[0];
  u.data[1][idx] = b[1];
}

inline void cns_etd1(const ModelParams& p, double dt, SpectralField& u, const SpectralField& g, std::size_t idx,
                     const double* kv) {
  Complex a[kMaxComps], b[kMaxComps];
  gather(u, idx, a);
  gather(g, idx, b);
  cns_apply_mode(p, kv, ModeFunction::Exp, dt, a);
  cns_apply_mode(p, kv, ModeFunction::Phi1, dt, b);
  for (int c = 0; c < u.components; ++c) u.data[c][idx] = a[c] + b[c];
}

inline void dwe_etd1(const DweParams& p, double dt, SpectralField& u, const SpectralField& g, std::size_t idx,
                     const double* kv) {
  const double m = mag(kv);
  Complex a[2] = {u.data[0][idx], u.data[1][idx]};
  Complex b[2] = {g.data[0][idx], g.data[1][idx]};
  dwe_apply_mode(p, m, ModeFunction::Exp, dt, a);
  dwe_apply_mode(p, m, ModeFunction::Phi1, dt, b);
  u.data[0][idx] = a[0] + b[0];
  u.data[1][idx] = a[1] + b[1];
}

// For real fields x, y the complex field x + i y has coefficients X + iY at
// every k. Using R(lambda, -k) = conj R(conj lambda, k), the real and imaginary
// parts of R(lambda)(x + i y) have half-spectrum coefficients (P + Q)/2 and
// (P - Q)/(2i) with P = R(lambda)(X + iY), Q = R(conj lambda)(X - iY).
template <class Solve>
inline void resolvent_pair(SpectralField& re, SpectralField& im, std::size_t idx, Solve&& solve) {
  const int nc = re.components;
  Complex a[kMaxComps], b[kMaxComps], P[kMaxComps], Q[kMaxComps];
  for (int c = 0; c < nc; ++c) {
    const Complex x = re.data[c][idx], y = im.data[c][idx];
    a[c] = x + kI * y;
    b[c] = x - kI * y;
  }
  solve(a, b, P, Q);
  for (int c = 0; c < nc; ++c) {
    re.data[c][idx] = 0.5 * (P[c] + Q[c]);
    im.data[c][idx] = -0.5 * kI * (P[c] - Q[c]);
  }
}

inline void cns_resolvent_pair(const ModelParams& p, Complex lambda, SpectralField& re, SpectralField& im,
                               std::size_t idx, const double* kv) {
  resolvent_pair(re, im, idx, [&](const Complex* a, const Complex* b, Complex* P, Complex* Q) {
    cns_resolvent_mode(p, lambda, kv, a, P);
    cns_resolvent_mode(p, std::conj(lambda), kv, b, Q);
  });
}

inline void dwe_resolvent_pair(const DweParams& p, Complex lambda, SpectralField& re, SpectralField& im,
                               std::size_t idx, const double* kv) {
  const double m = mag(kv);
  resolvent_pair(re, im, idx, [&](const Complex* a, const Complex* b, Complex* P, Complex* Q) {
    dwe_first_order_resolvent_mode(p, lambda, m, a, P);
    dwe_first_order_resolvent_mode(p, std::conj(lambda), m, b, Q);
  });
}

// Flat spectral index -> (weight, |xi|^2) for reductions.
struct FlatModes {
  ModeTables t;
  explicit FlatModes(const Grid& g) : t(g) {}
  void at(std::size_t idx, double& w, double& m2) const {
    const std::size_t s2 = t.shape[2], s1 = t.shape[1];
    const int i2 = static_cast<int>(idx % s2);
    const int i1 = static_cast<int>((idx / s2) % s1);
    const int i0 = static_cast<int>(idx / (s1 * s2));
    const int il = t.last_axis == 0 ? i0 : (t.last_axis == 1 ? i1 : i2);
    w = t.weight(il);
    m2 = t.k[0][i0] * t.k[0][i0] + t.k[1][i1] * t.k[1][i1] + t.k[2][i2] * t.k[2][i2];
  }
};

inline double sobolev_term(const SpectralField& u, const FlatModes& fm, double s, bool homogeneous,
                           std::size_t idx) {
  double w, m2;
  fm.at(idx, w, m2);
  double e = 0.0;
  for (int c = 0; c < u.components; ++c) e += std::norm(u.data[c][idx]);
  if (e == 0.0) return 0.0;
  const double mult = homogeneous ? (m2 == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(m2, s))
                                  : std::pow(1.0 + m2, s);
  return w * mult * e;
}

inline double parseval_scale(const Grid& g) { return g.cell_volume() / static_cast<double>(g.size()); }

}  // namespace parspec::kernels::detail
