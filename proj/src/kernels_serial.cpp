#include "kernel_modes.hpp"
#include "parspec/kernels.hpp"

namespace parspec::kernels::serial {

namespace d = detail;

void cns_propagate(const ModelParams& p, ModeFunction kind, double t, SpectralField& u) {
  d::check_cns(p, u);
  for_each_mode(u.grid, [&](std::size_t idx, const double* kv, double, bool) {
    d::cns_propagate(p, kind, t, u, idx, kv);
  });
}

void dwe_propagate(const DweParams& p, ModeFunction kind, double t, SpectralField& u) {
  d::check_dwe(p, u);
  for_each_mode(u.grid, [&](std::size_t idx, const double* kv, double, bool) {
    d::dwe_propagate(p, kind, t, u, idx, kv);
  });
}

void cns_etd1(const ModelParams& p, double dt, SpectralField& u, const SpectralField& g) {
  d::check_cns(p, u);
  d::check_cns(p, g);
  for_each_mode(u.grid, [&](std::size_t idx, const double* kv, double, bool) {
    d::cns_etd1(p, dt, u, g, idx, kv);
  });
}

void dwe_etd1(const DweParams& p, double dt, SpectralField& u, const SpectralField& g) {
  d::check_dwe(p, u);
  d::check_dwe(p, g);
  for_each_mode(u.grid, [&](std::size_t idx, const double* kv, double, bool) {
    d::dwe_etd1(p, dt, u, g, idx, kv);
  });
}

void cns_resolvent_pair(const ModelParams& p, Complex lambda, SpectralField& re, SpectralField& im) {
  d::check_cns(p, re);
  d::check_cns(p, im);
  for_each_mode(re.grid, [&](std::size_t idx, const double* kv, double, bool) {
    d::cns_resolvent_pair(p, lambda, re, im, idx, kv);
  });
}

void dwe_resolvent_pair(const DweParams& p, Complex lambda, SpectralField& re, SpectralField& im) {
  d::check_dwe(p, re);
  d::check_dwe(p, im);
  for_each_mode(re.grid, [&](std::size_t idx, const double* kv, double, bool) {
    d::dwe_resolvent_pair(p, lambda, re, im, idx, kv);
  });
}

void mul_add(std::size_t n, const double* a, const double* b, double s, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] += s * a[i] * b[i];
}

double sobolev_sq(const SpectralField& u, double s, bool homogeneous) {
  const d::FlatModes fm(u.grid);
  const std::size_t n = u.grid.spectral_size();
  return d::parseval_scale(u.grid) *
         det_sum(n, [&](std::size_t i) { return d::sobolev_term(u, fm, s, homogeneous, i); }, Exec::Serial);
}

}  // namespace parspec::kernels::serial
