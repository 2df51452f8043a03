#include "parspec/perturbation.hpp"

#include "parspec/error.hpp"
#include "parspec/freq_split.hpp"
#include "parspec/kernels.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace parspec {

void check_cfl(const CoefficientSups& s, double scale, double dissipation, double dt, double xi_max) {
  const double first = dt * scale * (s.c1 * xi_max + s.c0);
  if (first > 0.5) {
    std::ostringstream os;
    os << "explicit perturbation step too large: dt * (c1 xi_max + c0) = " << first << " > 0.5";
    raise(ErrorCode::CFLViolation, os.str());
  }
  if (scale * s.c2 >= 0.5 * dissipation) {
    std::ostringstream os;
    os << "second-order perturbation coefficient " << scale * s.c2 << " not below half the dissipation "
       << dissipation;
    raise(ErrorCode::CFLViolation, os.str());
  }
}

double PressureLaw::p1(double phi, double gamma) const {
  if (kappa == 1.0) return 0.0;
  const double k = kappa;
  auto integrand = [&](double th) {
    return (1.0 - th) * gamma * gamma * (k - 1.0) * std::pow(1.0 + th * phi, k - 2.0);
  };
  return boost::math::quadrature::gauss<double, 32>::integrate(integrand, 0.0, 1.0) / gamma;
}

double max_resolved_xi(const Grid& g) {
  double m2 = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    const double k = (g.points[a] / 2 - 1) * g.dk(a);
    m2 += k * k;
  }
  return std::sqrt(m2);
}

namespace {

// Spectral derivative table. Each entry is (source component, op) with op
// -1: identity, 0..dim-1: d/dx_op, 10: Laplacian.
struct DerivOp {
  int comp;
  int op;
};

Field derivatives(const SpectralField& u, const std::vector<DerivOp>& ops) {
  const Grid& g = u.grid;
  SpectralField d(g, static_cast<int>(ops.size()));
  for_each_mode(g, [&](std::size_t idx, const double* k, double, bool nyq) {
    for (std::size_t m = 0; m < ops.size(); ++m) {
      const Complex c = u.data[ops[m].comp][idx];
      Complex v;
      if (nyq) v = 0.0;
      else if (ops[m].op < 0) v = c;
      else if (ops[m].op == 10) v = -(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) * c;
      else v = kI * k[ops[m].op] * c;
      d.data[m][idx] = v;
    }
  });
  return to_physical(d);
}

double pointwise_sup(const Grid& g, const std::function<double(std::size_t)>& f) {
  return det_max(g.size(), f, default_exec());
}

double norm_at(const Field& f, std::size_t i) {
  double s = 0.0;
  for (int c = 0; c < f.components; ++c) s += f.data[c][i] * f.data[c][i];
  return std::sqrt(s);
}

SpectralField finish(Field& out, const std::optional<CutoffSpec>& cutoff) {
  SpectralField s = to_spectral(out);
  drop_nyquist(s);
  if (cutoff) return project_low(s, *cutoff);
  return s;
}

}  // namespace

CnsPerturbation::CnsPerturbation(const ModelParams& p, const SyntheticProfile& prof, PressureLaw law,
                                 std::optional<CutoffSpec> low_only)
    : p_(p), grid_(prof.grid), cutoff_(low_only), n_(prof.grid.dim) {
  p.validate();
  require(prof.kind == ProfileKind::CnsStationary, "CNS perturbation needs a cns_stationary profile");
  require(p.n == n_, "model dimension must match the profile grid");
  require(law.kappa >= 1.0, "pressure exponent must be >= 1");
  if (cutoff_) cutoff_->validate();
  const int n = n_;
  const std::size_t N = grid_.size();

  SpectralField u(grid_, n + 1);
  u[0] = to_spectral(prof.phi)[0];
  const SpectralField ws = to_spectral(prof.w);
  for (int i = 0; i < n; ++i) u[i + 1] = ws[i];

  // phi, w, grad phi, div w (as d_i w_i summed below), grad w, Lap w, grad div w
  std::vector<DerivOp> ops;
  ops.push_back({0, -1});
  for (int i = 0; i < n; ++i) ops.push_back({i + 1, -1});
  for (int j = 0; j < n; ++j) ops.push_back({0, j});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ops.push_back({i + 1, j});
  for (int i = 0; i < n; ++i) ops.push_back({i + 1, 10});
  const Field d = derivatives(u, ops);
  const int o_grad = 1 + n, o_gw = 1 + 2 * n, o_lap = 1 + 2 * n + n * n;

  // grad div w_w: d_i (sum_j d_j w_j), via a second spectral pass
  SpectralField divs(grid_, 1);
  for_each_mode(grid_, [&](std::size_t idx, const double* k, double, bool) {
    Complex s = 0.0;
    for (int j = 0; j < n; ++j) s += kI * k[j] * u.data[j + 1][idx];
    divs.data[0][idx] = s;
  });
  std::vector<DerivOp> gops;
  for (int i = 0; i < n; ++i) gops.push_back({0, i});
  const Field graddiv = derivatives(divs, gops);

  phi_w_ = Field(grid_, 1);
  phi_w_[0] = d[0];
  w_w_ = Field(grid_, n);
  grad_phi_w_ = Field(grid_, n);
  grad_w_w_ = Field(grid_, n * n);
  div_w_w_ = Field(grid_, 1);
  for (int i = 0; i < n; ++i) {
    w_w_[i] = d[1 + i];
    grad_phi_w_[i] = d[o_grad + i];
  }
  for (int c = 0; c < n * n; ++c) grad_w_w_[c] = d[o_gw + c];
  for (std::size_t q = 0; q < N; ++q) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += d[o_gw + i * n + i][q];
    div_w_w_[0][q] = s;
  }

  const double g2 = p.gamma * p.gamma;
  coef_phi_ = Field(grid_, n);
  coef_grad_ = Field(grid_, 1);
  coef_visc_ = Field(grid_, 1);
  for (std::size_t q = 0; q < N; ++q) {
    const double ph = phi_w_[0][q];
    require(1.0 + ph > 0.5, "profile violates 1 + phi_w > 1/2");
    const double h = h1(ph);
    const double pp = law.p1(ph, p.gamma);
    for (int i = 0; i < n; ++i) {
      const double lw = p.alpha * d[o_lap + i][q] + p.beta * graddiv[i][q];
      coef_phi_[i][q] = -h * lw / g2 + (h + 2.0 * pp) * grad_phi_w_[i][q];
    }
    coef_grad_[0][q] = (h + 2.0 * pp) * ph;
    coef_visc_[0][q] = -h * ph / g2;
  }

  sups_.c0 = pointwise_sup(grid_, [&](std::size_t q) {
    return norm_at(grad_phi_w_, q) + std::abs(div_w_w_[0][q]) + norm_at(grad_w_w_, q) + norm_at(coef_phi_, q);
  });
  sups_.c1 = pointwise_sup(grid_, [&](std::size_t q) {
    return std::abs(phi_w_[0][q]) + 2.0 * norm_at(w_w_, q) + std::abs(coef_grad_[0][q]);
  });
  sups_.c2 = pointwise_sup(grid_, [&](std::size_t q) { return std::abs(coef_visc_[0][q]); }) *
             (p.alpha + std::abs(p.beta));
}

SpectralField CnsPerturbation::apply(const SpectralField& u, Exec ex) const {
  require(u.grid == grid_, "state grid must match the profile grid");
  require(u.components == n_ + 1, "CNS state needs n + 1 components");
  const int n = n_;
  const std::size_t N = grid_.size();

  // phi, w, grad phi, grad w, (alpha Lap + beta grad div) w
  std::vector<DerivOp> ops;
  ops.push_back({0, -1});
  for (int i = 0; i < n; ++i) ops.push_back({i + 1, -1});
  for (int j = 0; j < n; ++j) ops.push_back({0, j});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ops.push_back({i + 1, j});
  const Field d = derivatives(u, ops);
  const int o_grad = 1 + n, o_gw = 1 + 2 * n;

  SpectralField lw_s(grid_, n);
  for_each_mode(grid_, [&](std::size_t idx, const double* k, double, bool nyq) {
    double m2 = 0.0;
    Complex kw = 0.0;
    for (int j = 0; j < n; ++j) {
      m2 += k[j] * k[j];
      kw += k[j] * u.data[j + 1][idx];
    }
    for (int i = 0; i < n; ++i)
      lw_s.data[i][idx] = nyq ? Complex(0.0) : -p_.alpha * m2 * u.data[i + 1][idx] - p_.beta * k[i] * kw;
  });
  const Field lw = to_physical(lw_s);

  RealArray divw(N, 0.0);
  for (int i = 0; i < n; ++i)
    for (std::size_t q = 0; q < N; ++q) divw[q] += d[o_gw + i * n + i][q];

  Field out(grid_, n + 1);
  const double g = p_.gamma;
  double* o0 = out[0].data();
  // b11 + b12
  for (int j = 0; j < n; ++j) {
    kernels::mul_add(N, d[1 + j].data(), grad_phi_w_[j].data(), g, o0, ex);
    kernels::mul_add(N, w_w_[j].data(), d[o_grad + j].data(), g, o0, ex);
  }
  kernels::mul_add(N, d[0].data(), div_w_w_[0].data(), g, o0, ex);
  kernels::mul_add(N, phi_w_[0].data(), divw.data(), g, o0, ex);
  // b21 + b22 + b23
  for (int i = 0; i < n; ++i) {
    double* oi = out[i + 1].data();
    for (int j = 0; j < n; ++j) {
      kernels::mul_add(N, d[1 + j].data(), grad_w_w_[i * n + j].data(), g, oi, ex);
      kernels::mul_add(N, w_w_[j].data(), d[o_gw + i * n + j].data(), g, oi, ex);
    }
    kernels::mul_add(N, coef_phi_[i].data(), d[0].data(), g, oi, ex);
    kernels::mul_add(N, coef_grad_[0].data(), d[o_grad + i].data(), g, oi, ex);
    kernels::mul_add(N, coef_visc_[0].data(), lw[i].data(), g, oi, ex);
  }
  return finish(out, cutoff_);
}

DwePerturbation::DwePerturbation(const DweParams& p, const SyntheticProfile& prof,
                                 std::optional<CutoffSpec> low_only)
    : p_(p), grid_(prof.grid), cutoff_(low_only), n_(prof.grid.dim) {
  p.validate();
  require(prof.kind == ProfileKind::DweCoefficients, "damped-wave perturbation needs a dwe_coefficients profile");
  require(p.n == n_, "model dimension must match the profile grid");
  if (cutoff_) cutoff_->validate();
  const SpectralField b1 = to_spectral(prof.b1);
  div_b1_ = to_physical(divergence(b1, 0));
  b2_ = prof.b2;
  b3_ = prof.b3;
  sups_.c0 = lp_norm(div_b1_, INFINITY);
  sups_.c1 = lp_norm(b2_, INFINITY);
  sups_.c2 = lp_norm(b3_, INFINITY);
}

SpectralField DwePerturbation::apply(const SpectralField& u, Exec ex) const {
  require(u.grid == grid_, "state grid must match the profile grid");
  require(u.components == 2, "damped-wave state needs 2 components");
  const int n = n_;
  const std::size_t N = grid_.size();
  std::vector<DerivOp> ops{{0, -1}};
  for (int j = 0; j < n; ++j) ops.push_back({0, j});
  ops.push_back({0, 10});
  const Field d = derivatives(u, ops);
  Field out(grid_, 2);
  double* o1 = out[1].data();
  kernels::mul_add(N, d[0].data(), div_b1_[0].data(), 1.0, o1, ex);
  for (int j = 0; j < n; ++j) kernels::mul_add(N, b2_[j].data(), d[1 + j].data(), 1.0, o1, ex);
  kernels::mul_add(N, b3_[0].data(), d[n + 1].data(), 1.0, o1, ex);
  return finish(out, cutoff_);
}

}  // namespace parspec
