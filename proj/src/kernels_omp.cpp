#include "kernel_modes.hpp"
#include "parspec/kernels.hpp"

namespace parspec::kernels::omp {

namespace d = detail;

namespace {

// Parallel sweep over the half spectrum; the two outer axes are collapsed.
template <class F>
void sweep(const Grid& g, F&& f) {
  const ModeTables t(g);
  const int s0 = t.shape[0], s1 = t.shape[1], s2 = t.shape[2];
#pragma omp parallel for collapse(2) schedule(static)
  for (int i0 = 0; i0 < s0; ++i0)
    for (int i1 = 0; i1 < s1; ++i1) {
      std::size_t idx = (static_cast<std::size_t>(i0) * s1 + i1) * s2;
      for (int i2 = 0; i2 < s2; ++i2, ++idx) {
        const double kv[3] = {t.k[0][i0], t.k[1][i1], t.k[2][i2]};
        f(idx, kv);
      }
    }
}

}  // namespace

void cns_propagate(const ModelParams& p, ModeFunction kind, double t, SpectralField& u) {
  d::check_cns(p, u);
  sweep(u.grid, [&](std::size_t idx, const double* kv) { d::cns_propagate(p, kind, t, u, idx, kv); });
}

void dwe_propagate(const DweParams& p, ModeFunction kind, double t, SpectralField& u) {
  d::check_dwe(p, u);
  sweep(u.grid, [&](std::size_t idx, const double* kv) { d::dwe_propagate(p, kind, t, u, idx, kv); });
}

void cns_etd1(const ModelParams& p, double dt, SpectralField& u, const SpectralField& g) {
  d::check_cns(p, u);
  d::check_cns(p, g);
  sweep(u.grid, [&](std::size_t idx, const double* kv) { d::cns_etd1(p, dt, u, g, idx, kv); });
}

void dwe_etd1(const DweParams& p, double dt, SpectralField& u, const SpectralField& g) {
  d::check_dwe(p, u);
  d::check_dwe(p, g);
  sweep(u.grid, [&](std::size_t idx, const double* kv) { d::dwe_etd1(p, dt, u, g, idx, kv); });
}

void cns_resolvent_pair(const ModelParams& p, Complex lambda, SpectralField& re, SpectralField& im) {
  d::check_cns(p, re);
  d::check_cns(p, im);
  sweep(re.grid, [&](std::size_t idx, const double* kv) { d::cns_resolvent_pair(p, lambda, re, im, idx, kv); });
}

void dwe_resolvent_pair(const DweParams& p, Complex lambda, SpectralField& re, SpectralField& im) {
  d::check_dwe(p, re);
  d::check_dwe(p, im);
  sweep(re.grid, [&](std::size_t idx, const double* kv) { d::dwe_resolvent_pair(p, lambda, re, im, idx, kv); });
}

void mul_add(std::size_t n, const double* a, const double* b, double s, double* out) {
  const long long m = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < m; ++i) out[i] += s * a[i] * b[i];
}

double sobolev_sq(const SpectralField& u, double s, bool homogeneous) {
  const d::FlatModes fm(u.grid);
  const std::size_t n = u.grid.spectral_size();
  return d::parseval_scale(u.grid) *
         det_sum(n, [&](std::size_t i) { return d::sobolev_term(u, fm, s, homogeneous, i); }, Exec::Parallel);
}

}  // namespace parspec::kernels::omp
