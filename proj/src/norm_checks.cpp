#include "parspec/error.hpp"
#include "parspec/freq_split.hpp"
#include "parspec/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parspec {

namespace {

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

Field scalar_from(const Field& f) {
  if (f.components == 1) return f;
  Field out(f.grid, 1, f.support);
  const auto m = magnitudes(f);
  std::copy(m.begin(), m.end(), out.data[0].begin());
  return out;
}

}  // namespace

HolderReport holder_lorentz_check(const Field& f, const Field& g, const LorentzExp& ef, const LorentzExp& eg,
                                  const LorentzExp& eprod) {
  require(f.grid == g.grid, "fields must share a grid");
  ef.validate();
  eg.validate();
  eprod.validate();
  require(std::abs(inv(eprod.p) - inv(ef.p) - inv(eg.p)) < 1e-12, "Hoelder needs 1/p = 1/p1 + 1/p2");
  require(inv(eprod.q) <= inv(ef.q) + inv(eg.q) + 1e-12, "Hoelder needs 1/q <= 1/q1 + 1/q2");
  const auto mf = magnitudes(f), mg = magnitudes(g);
  std::vector<double> prod(mf.size());
  for (std::size_t i = 0; i < mf.size(); ++i) prod[i] = mf[i] * mg[i];
  const double dv = f.grid.cell_volume();
  HolderReport r;
  r.lhs = lorentz_norm(RearrangementTable(std::move(prod), dv), eprod);
  r.f_norm = lorentz_norm(RearrangementTable(mf, dv), ef);
  r.g_norm = lorentz_norm(RearrangementTable(mg, dv), eg);
  const double den = r.f_norm * r.g_norm;
  r.constant = den > 0.0 ? r.lhs / den : 0.0;
  return r;
}

EmbeddingReport sobolev_embedding_check(const Field& u, double p, double q) {
  require(p > 1.0 && q >= p && std::isfinite(q), "embedding needs 1 < p <= q < inf");
  const Field s = scalar_from(u);
  const int n = u.grid.dim;
  EmbeddingReport r;
  r.delta = 0.5 * n * (1.0 / p - 1.0 / q);
  r.lhs = lp_norm(s, q);
  r.rhs = lp_norm(fractional_laplacian(s, r.delta), p);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

TrilinearReport trilinear_fgh_check(const Field& f, const Field& g, const Field& h, double s1, double s2,
                                    TrilinearVariant v, bool enforce_scaling) {
  require(f.grid == g.grid && g.grid == h.grid, "fields must share a grid");
  require(f.components == 1 && g.components == 1 && h.components == 1, "trilinear check takes scalar fields");
  const int n = f.grid.dim;
  require(s1 > 0.0 && s2 > 0.0 && s1 < 0.5 * n && s2 < 0.5 * n, "need 0 < s1, s2 < n/2");
  const double balanced = v == TrilinearVariant::HalfDimWeak ? 2.0 : 1.0;
  if (enforce_scaling) require(std::abs(s1 + s2 - balanced) < 1e-12, "exponents are not scale balanced");
  TrilinearReport r;
  const std::size_t N = f.grid.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) acc += f.data[0][i] * g.data[0][i] * h.data[0][i];
  r.lhs = std::abs(acc) * f.grid.cell_volume();
  const double p = v == TrilinearVariant::HalfDimWeak ? 0.5 * n : n;
  r.f_norm = lorentz_norm(f, LorentzExp{std::max(1.0, p), std::numeric_limits<double>::infinity()});
  r.g_norm = homogeneous_sobolev_norm(g, s1);
  r.h_norm = homogeneous_sobolev_norm(h, s2);
  const double den = r.f_norm * r.g_norm * r.h_norm;
  r.ratio = den > 0.0 ? r.lhs / den : 0.0;
  return r;
}

}  // namespace parspec
