#include "parspec/cutoff.hpp"
#include "parspec/error.hpp"
#include "parspec/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parspec {

BesovProfile besov_profile(const SpectralField& f, double s) {
  const Grid& g = f.grid;
  double kmin = g.dk(0), kmax2 = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    kmin = std::min(kmin, g.dk(a));
    kmax2 += std::pow(g.dk(a) * (g.points[a] / 2), 2);
  }
  const int jlo = static_cast<int>(std::floor(std::log2(3.0 * kmin / 8.0)));
  const int jhi = static_cast<int>(std::ceil(std::log2(4.0 * std::sqrt(kmax2) / 3.0)));
  std::vector<double> acc(jhi - jlo + 1, 0.0);
  for_each_mode(g, [&](std::size_t idx, const double* k, double w, bool) {
    const double r = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
    if (r == 0.0) return;
    double a = 0.0;
    for (int c = 0; c < f.components; ++c) a += std::norm(f.data[c][idx]);
    if (a == 0.0) return;
    const int j0 = std::max(jlo, static_cast<int>(std::floor(std::log2(3.0 * r / 8.0))));
    const int j1 = std::min(jhi, static_cast<int>(std::ceil(std::log2(4.0 * r / 3.0))));
    for (int j = j0; j <= j1; ++j) {
      const double phi = lp_phi_j(j, r);
      if (phi != 0.0) acc[j - jlo] += w * phi * phi * a;
    }
  });
  const double scale = g.cell_volume() / static_cast<double>(g.size());
  BesovProfile p;
  for (int j = jlo; j <= jhi; ++j) {
    const double b = std::sqrt(acc[j - jlo] * scale);
    p.j.push_back(j);
    p.block_l2.push_back(b);
    const double v = std::pow(2.0, j * s) * b;
    if (v > p.value) {
      p.value = v;
      p.j_at_sup = j;
    }
  }
  return p;
}

double besov_norm_dyadic(const Field& f, double s) { return besov_profile(to_spectral(f), s).value; }

FdBesovReport besov_fd_report(const Field& f, double s) {
  require(s > 0.0 && s < 1.0, "finite-difference Besov seminorm needs 0 < s < 1");
  const Grid& g = f.grid;
  const SpectralField fh = to_spectral(f);
  // collapse components into |c|^2 once
  std::vector<double> energy(g.spectral_size(), 0.0);
  for (int c = 0; c < f.components; ++c)
    for (std::size_t i = 0; i < energy.size(); ++i) energy[i] += std::norm(fh.data[c][i]);
  const ModeTables t(g);

  std::vector<std::array<double, 3>> dirs;
  for (int a = 0; a < g.dim; ++a) {
    std::array<double, 3> d{0, 0, 0};
    d[a] = g.spacing(a);
    dirs.push_back(d);
  }
  if (g.dim > 1) {
    std::array<double, 3> d{0, 0, 0};
    for (int a = 0; a < g.dim; ++a) d[a] = g.spacing(a);
    dirs.push_back(d);
  }
  const int per_dir = static_cast<int>(64 / dirs.size());
  FdBesovReport rep;
  double smallest = std::numeric_limits<double>::infinity();
  const double scale = g.cell_volume() / static_cast<double>(g.size());
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    int half = g.points[0] / 2;
    for (int a = 0; a < g.dim; ++a)
      if (dirs[di][a] != 0.0) half = std::min(half, g.points[a] / 2);
    int count = 0;
    for (int e = 0; count < per_dir; ++e) {
      // 1, 2, 3, 4, 6, 8, 12, ...
      const int m = e < 2 ? e + 1 : (e % 2 == 0 ? (1 << (e / 2)) : 3 * (1 << (e / 2 - 1)));
      if (m > half) break;
      ++count;
      double hv[3];
      double hn = 0.0;
      for (int a = 0; a < 3; ++a) {
        hv[a] = m * dirs[di][a];
        hn += hv[a] * hv[a];
      }
      hn = std::sqrt(hn);
      double total = 0.0;
      std::size_t idx = 0;
      for (int i0 = 0; i0 < t.shape[0]; ++i0)
        for (int i1 = 0; i1 < t.shape[1]; ++i1)
          for (int i2 = 0; i2 < t.shape[2]; ++i2, ++idx) {
            if (energy[idx] == 0.0) continue;
            const double ph = 0.5 * (t.k[0][i0] * hv[0] + t.k[1][i1] * hv[1] + t.k[2][i2] * hv[2]);
            const int il = t.last_axis == 0 ? i0 : (t.last_axis == 1 ? i1 : i2);
            const double sn = std::sin(ph);
            total += t.weight(il) * 4.0 * sn * sn * energy[idx];
          }
      const double ratio = std::sqrt(total * scale) / std::pow(hn, s);
      rep.h.push_back(hn);
      rep.ratio.push_back(ratio);
      smallest = std::min(smallest, hn);
      if (ratio > rep.value) {
        rep.value = ratio;
        rep.h_at_sup = hn;
      }
    }
  }
  rep.may_undershoot = rep.value > 0.0 && rep.h_at_sup <= smallest * (1.0 + 1e-12);
  return rep;
}

double besov_halfnorm_fd(const Field& f, double s) { return besov_fd_report(f, s).value; }

}  // namespace parspec
