#include "parspec/error.hpp"
#include "parspec/grid.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace parspec {

namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

using PlanKey = std::tuple<int, int, int, int>;

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(const Grid& g) {
  static std::map<PlanKey, PlanPair> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  const PlanKey key{g.dim, g.points[0], g.points[1], g.points[2]};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  int dims[3];
  for (int a = 0; a < g.dim; ++a) dims[a] = g.points[a];
  RealArray r(g.size());
  ComplexArray c(g.spectral_size());
  auto* cp = reinterpret_cast<fftw_complex*>(c.data());
  PlanPair p;
  // ESTIMATE keeps plan choice, hence rounding, identical across runs
  p.r2c = fftw_plan_dft_r2c(g.dim, dims, r.data(), cp, FFTW_ESTIMATE);
  p.c2r = fftw_plan_dft_c2r(g.dim, dims, cp, r.data(), FFTW_ESTIMATE);
  if (!p.r2c || !p.c2r) raise(ErrorCode::InvalidArgument, "FFTW planning failed");
  return cache.emplace(key, p).first->second;
}

}  // namespace

void fft_forward(const Grid& g, const double* in, Complex* out) {
  const PlanPair& p = plans_for(g);
  fftw_execute_dft_r2c(p.r2c, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void fft_inverse(const Grid& g, const Complex* in, double* out) {
  const PlanPair& p = plans_for(g);
  // c2r overwrites its input
  ComplexArray tmp(in, in + g.spectral_size());
  fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(tmp.data()), out);
  const double s = 1.0 / static_cast<double>(g.size());
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) out[i] *= s;
}

SpectralField to_spectral(const Field& f) {
  SpectralField s(f.grid, f.components, f.support);
  for (int c = 0; c < f.components; ++c) fft_forward(f.grid, f.data[c].data(), s.data[c].data());
  return s;
}

Field to_physical(const SpectralField& s) {
  Field f(s.grid, s.components, s.support);
  for (int c = 0; c < s.components; ++c) fft_inverse(s.grid, s.data[c].data(), f.data[c].data());
  return f;
}

}  // namespace parspec
