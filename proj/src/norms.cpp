#include "parspec/norms.hpp"

#include "parspec/error.hpp"
#include "parspec/exec.hpp"

#include <cmath>
#include <sstream>

namespace parspec {

double weighted_linf_norm(const Field& f, double s) {
  require(s >= 0.0, "weight exponent must be nonnegative");
  const Grid& g = f.grid;
  const std::vector<double> m = magnitudes(f);
  double best = 0.0;
  std::size_t idx = 0;
  for (int i0 = 0; i0 < g.points[0]; ++i0)
    for (int i1 = 0; i1 < g.points[1]; ++i1)
      for (int i2 = 0; i2 < g.points[2]; ++i2, ++idx) {
        const int ii[3] = {i0, i1, i2};
        double r2 = 0.0;
        for (int a = 0; a < g.dim; ++a) r2 += std::pow(g.coord(a, ii[a]), 2);
        const double w = s == 0.0 ? 1.0 : std::pow(1.0 + std::sqrt(r2), s);
        best = std::max(best, w * m[idx]);
      }
  return best;
}

namespace {

double weighted_spectral_sum(const SpectralField& f, const std::function<double(double)>& mult) {
  const Grid& g = f.grid;
  double total = 0.0;
  for_each_mode(g, [&](std::size_t idx, const double* k, double w, bool) {
    double a = 0.0;
    for (int c = 0; c < f.components; ++c) a += std::norm(f.data[c][idx]);
    if (a == 0.0) return;
    total += w * mult(std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2])) * a;
  });
  return total * g.cell_volume() / static_cast<double>(g.size());
}

}  // namespace

double homogeneous_sobolev_norm(const SpectralField& f, double s) {
  if (s < 0.0) {
    const double n = static_cast<double>(f.grid.size());
    for (int c = 0; c < f.components; ++c)
      if (std::abs(f.data[c][0]) / n > 1e-12)
        raise(ErrorCode::ZeroModeSingularity, "negative-order homogeneous norm needs a zero-mean field");
  }
  return std::sqrt(weighted_spectral_sum(f, [s](double r) { return r == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(r, 2.0 * s); }));
}

double homogeneous_sobolev_norm(const Field& f, double s) { return homogeneous_sobolev_norm(to_spectral(f), s); }

double sobolev_norm(const SpectralField& f, double s) {
  return std::sqrt(weighted_spectral_sum(f, [s](double r) { return std::pow(1.0 + r * r, s); }));
}

std::string describe(const Grid& g) {
  std::ostringstream os;
  os << "n=" << g.dim << " N=";
  for (int a = 0; a < g.dim; ++a) os << (a ? "x" : "") << g.points[a];
  os << " L=";
  for (int a = 0; a < g.dim; ++a) os << (a ? "x" : "") << g.length[a];
  return os.str();
}

NormReport refinement_study(const std::string& id, const Grid& g, const std::function<Field(const Grid&)>& gen,
                            const std::function<double(const Field&)>& norm, double tol) {
  NormReport r;
  r.id = id;
  r.grid = describe(g);
  r.value = norm(gen(g));
  r.refined_value = norm(gen(g.refined(2)));
  const double scale = std::max(std::abs(r.value), std::abs(r.refined_value));
  r.refinement_stable = scale == 0.0 || std::abs(r.value - r.refined_value) <= tol * scale;
  return r;
}

}  // namespace parspec
