#pragma once

#include "parspec/exec.hpp"
#include "parspec/grid.hpp"
#include "parspec/symbol.hpp"

namespace parspec::kernels {

// Every kernel exists twice: serial:: is a plain loop kept as the reference,
// omp:: is the worksharing version. Results agree bitwise; the dispatchers
// below pick one by Exec.

#define PARSPEC_KERNEL_DECLS                                                                              \
  /* u <- f(t, A) u per mode, f = exp(-tA) or int_0^t exp(-sA) ds */                                    \
  void cns_propagate(const ModelParams& p, ModeFunction kind, double t, SpectralField& u);               \
  void dwe_propagate(const DweParams& p, ModeFunction kind, double t, SpectralField& u);                 \
  /* u <- exp(-dt A) u + phi1(dt) g */                                                                   \
  void cns_etd1(const ModelParams& p, double dt, SpectralField& u, const SpectralField& g);              \
  void dwe_etd1(const DweParams& p, double dt, SpectralField& u, const SpectralField& g);                \
  /* (re, im) <- (lambda + A)^{-1} (re + i im), both parts real fields */                                \
  void cns_resolvent_pair(const ModelParams& p, Complex lambda, SpectralField& re, SpectralField& im);   \
  void dwe_resolvent_pair(const DweParams& p, Complex lambda, SpectralField& re, SpectralField& im);     \
  /* out[i] += s * a[i] * b[i] */                                                                        \
  void mul_add(std::size_t n, const double* a, const double* b, double s, double* out);                  \
  /* sum over modes of weight * (1+|xi|^2)^s |c|^2 (or |xi|^{2s} when homogeneous), Parseval-scaled */   \
  double sobolev_sq(const SpectralField& u, double s, bool homogeneous);

namespace serial {
PARSPEC_KERNEL_DECLS
}
namespace omp {
PARSPEC_KERNEL_DECLS
}

#undef PARSPEC_KERNEL_DECLS

inline void cns_propagate(const ModelParams& p, ModeFunction kind, double t, SpectralField& u, Exec ex) {
  ex == Exec::Serial ? serial::cns_propagate(p, kind, t, u) : omp::cns_propagate(p, kind, t, u);
}
inline void dwe_propagate(const DweParams& p, ModeFunction kind, double t, SpectralField& u, Exec ex) {
  ex == Exec::Serial ? serial::dwe_propagate(p, kind, t, u) : omp::dwe_propagate(p, kind, t, u);
}
inline void cns_etd1(const ModelParams& p, double dt, SpectralField& u, const SpectralField& g, Exec ex) {
  ex == Exec::Serial ? serial::cns_etd1(p, dt, u, g) : omp::cns_etd1(p, dt, u, g);
}
inline void dwe_etd1(const DweParams& p, double dt, SpectralField& u, const SpectralField& g, Exec ex) {
  ex == Exec::Serial ? serial::dwe_etd1(p, dt, u, g) : omp::dwe_etd1(p, dt, u, g);
}
inline void cns_resolvent_pair(const ModelParams& p, Complex lambda, SpectralField& re, SpectralField& im,
                               Exec ex) {
  ex == Exec::Serial ? serial::cns_resolvent_pair(p, lambda, re, im) : omp::cns_resolvent_pair(p, lambda, re, im);
}
inline void dwe_resolvent_pair(const DweParams& p, Complex lambda, SpectralField& re, SpectralField& im,
                               Exec ex) {
  ex == Exec::Serial ? serial::dwe_resolvent_pair(p, lambda, re, im) : omp::dwe_resolvent_pair(p, lambda, re, im);
}
inline void mul_add(std::size_t n, const double* a, const double* b, double s, double* out, Exec ex) {
  ex == Exec::Serial ? serial::mul_add(n, a, b, s, out) : omp::mul_add(n, a, b, s, out);
}
inline double sobolev_sq(const SpectralField& u, double s, bool homogeneous, Exec ex) {
  return ex == Exec::Serial ? serial::sobolev_sq(u, s, homogeneous) : omp::sobolev_sq(u, s, homogeneous);
}

}  // namespace parspec::kernels
