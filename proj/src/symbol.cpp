#include "parspec/symbol.hpp"

#include "parspec/error.hpp"

#include <cmath>

namespace parspec {

namespace {


// Roots of lambda^2 + b lambda + c = 0 with b = bcoef |xi|^2, c = ccoef |xi|^2.
Spectrum quadratic_roots(double bcoef, double ccoef, double mag, double crossover) {
  Spectrum s;
  const double m2 = mag * mag;
  const double b = bcoef * m2;
  const double c = ccoef * m2;
  // factored to keep the cancellation near the crossover intrinsic only
  s.discriminant = m2 * (bcoef * bcoef * m2 - 4.0 * ccoef);
  s.mean = -0.5 * b;
  if (std::abs(mag - crossover) <= kDegeneracyTol) {
    s.regime = Regime::Critical;
  } else if (mag < crossover) {
    s.regime = Regime::Oscillatory;
  } else {
    s.regime = Regime::RealSplit;
  }
  if (s.discriminant < 0.0) {
    const double im = 0.5 * std::sqrt(-s.discriminant);
    s.delta = Complex(0.0, im);
    s.lambda_plus = Complex(s.mean, im);
    s.lambda_minus = Complex(s.mean, -im);
  } else {
    const double sq = std::sqrt(s.discriminant);
    s.delta = Complex(0.5 * sq, 0.0);
    const double lm = -0.5 * (b + sq);
    s.lambda_minus = Complex(lm, 0.0);
    s.lambda_plus = Complex(lm != 0.0 ? c / lm : 0.0, 0.0);
  }
  return s;
}

bool degenerate(const Spectrum& s, double mag, double crossover) {
  return mag < kDegeneracyTol || std::abs(mag - crossover) <= kDegeneracyTol ||
         std::abs(s.lambda_plus - s.lambda_minus) < kDegeneracyTol;
}

// g_k(z) = int_0^1 u^k e^{z u} du
Complex gk(int k, Complex z) {
  if (std::abs(z) <= 2.0) {
    Complex sum = 0.0;
    Complex term = 1.0;  // z^m / m!
    for (int m = 0; m < 80; ++m) {
      const Complex add = term / static_cast<double>(k + m + 1);
      sum += add;
      if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
      term *= z / static_cast<double>(m + 1);
    }
    return sum;
  }
  const Complex ez = std::exp(z);
  Complex g = (ez - 1.0) / z;
  for (int j = 1; j <= k; ++j) g = (ez - static_cast<double>(j) * g) / z;
  return g;
}

// k-th derivative in lambda of f at lambda
Complex fderiv(ModeFunction kind, int k, Complex lambda, double t) {
  if (kind == ModeFunction::Exp) return std::pow(t, k) * std::exp(lambda * t);
  return std::pow(t, k + 1) * gk(k, lambda * t);
}

void check_vec(const FreqVector& xi, int n) {
  require(xi.dim() == n, "frequency vector dimension does not match model dimension");
  for (double v : xi.xi) require(std::isfinite(v), "non-finite frequency component");
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Oscillatory: return "oscillatory";
    case Regime::Critical: return "critical";
    case Regime::RealSplit: return "real-split";
  }
  return "?";
}

void ModelParams::validate() const {
  require(n >= 1, "dimension n must be >= 1");
  require(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
  require(alpha + beta > 0.0 && std::isfinite(beta), "alpha + beta must be positive");
  require(gamma > 0.0 && std::isfinite(gamma), "gamma must be positive");
}

bool ModelParams::strong_viscosity() const {
  return alpha + beta >= 5.0 * gamma * gamma && gamma >= 1.0;
}

void DweParams::validate() const {
  require(n >= 1, "dimension n must be >= 1");
  require(mu > 0.0 && std::isfinite(mu), "mu must be positive");
  require(mu_prime > 0.0 && std::isfinite(mu_prime), "mu' must be positive");
}

bool DweParams::strong_damping() const { return mu >= 5.0 * mu_prime && mu_prime >= 1.0; }

double DweParams::crossover() const { return 2.0 * std::sqrt(mu_prime) / mu; }

// ---------------- CNS ----------------

CMatrix cns_symbol(const ModelParams& p, const FreqVector& xi) {
  p.validate();
  check_vec(xi, p.n);
  const int n = p.n;
  CMatrix a = CMatrix::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    a(0, i + 1) = kI * p.gamma * xi.xi[i];
    a(i + 1, 0) = kI * p.gamma * xi.xi[i];
    for (int j = 0; j < n; ++j) a(i + 1, j + 1) = p.beta * xi.xi[i] * xi.xi[j];
    a(i + 1, i + 1) += p.alpha * xi.magnitude * xi.magnitude;
  }
  return a;
}

Spectrum cns_spectrum(const ModelParams& p, double mag) {
  p.validate();
  require(mag >= 0.0 && std::isfinite(mag), "|xi| must be finite and non-negative");
  Spectrum s = quadratic_roots(p.a(), p.gamma * p.gamma, mag, p.crossover());
  s.lambda1 = Complex(-p.alpha * mag * mag, 0.0);
  return s;
}

bool cns_is_degenerate(const ModelParams& p, double mag) {
  return degenerate(cns_spectrum(p, mag), mag, p.crossover());
}

std::pair<Spectrum, Projections> cns_eigensystem(const ModelParams& p, const FreqVector& xi) {
  check_vec(xi, p.n);
  Spectrum s = cns_spectrum(p, xi.magnitude);
  if (degenerate(s, xi.magnitude, p.crossover()))
    raise(ErrorCode::DegenerateFrequency, "eigenvalues coincide at this frequency");
  const int n = p.n;
  const double m2 = xi.magnitude * xi.magnitude;
  const Complex gap = s.lambda_plus - s.lambda_minus;
  Projections pr;
  pr.pi1 = CMatrix::Zero(n + 1, n + 1);
  pr.pi_plus = CMatrix::Zero(n + 1, n + 1);
  pr.pi_minus = CMatrix::Zero(n + 1, n + 1);
  pr.pi_plus(0, 0) = -s.lambda_minus / gap;
  pr.pi_minus(0, 0) = s.lambda_plus / gap;
  for (int i = 0; i < n; ++i) {
    const Complex off = -kI * p.gamma * xi.xi[i] / gap;
    pr.pi_plus(0, i + 1) = off;
    pr.pi_plus(i + 1, 0) = off;
    pr.pi_minus(0, i + 1) = -off;
    pr.pi_minus(i + 1, 0) = -off;
    for (int j = 0; j < n; ++j) {
      const double pp = xi.xi[i] * xi.xi[j] / m2;
      pr.pi1(i + 1, j + 1) = (i == j ? 1.0 : 0.0) - pp;
      pr.pi_plus(i + 1, j + 1) = s.lambda_plus * pp / gap;
      pr.pi_minus(i + 1, j + 1) = -s.lambda_minus * pp / gap;
    }
  }
  return {s, pr};
}

CMatrix cns_propagator(const ModelParams& p, const FreqVector& xi, double t) {
  check_vec(xi, p.n);
  require(t >= 0.0 && std::isfinite(t), "propagator time must be finite and non-negative");
  if (xi.magnitude == 0.0) return CMatrix::Identity(p.n + 1, p.n + 1);
  if (cns_is_degenerate(p, xi.magnitude)) return expm_pade(-t * cns_symbol(p, xi));
  auto [s, pr] = cns_eigensystem(p, xi);
  return std::exp(*s.lambda1 * t) * pr.pi1 + std::exp(s.lambda_plus * t) * pr.pi_plus +
         std::exp(s.lambda_minus * t) * pr.pi_minus;
}

// ---------------- DWE ----------------

CMatrix dwe_symbol(const DweParams& p, const FreqVector& xi) {
  p.validate();
  check_vec(xi, p.n);
  const double m2 = xi.magnitude * xi.magnitude;
  CMatrix a(2, 2);
  a << 0.0, -1.0, p.mu_prime * m2, p.mu * m2;
  return a;
}

Spectrum dwe_spectrum(const DweParams& p, double mag) {
  p.validate();
  require(mag >= 0.0 && std::isfinite(mag), "|xi| must be finite and non-negative");
  return quadratic_roots(p.mu, p.mu_prime, mag, p.crossover());
}

bool dwe_is_degenerate(const DweParams& p, double mag) {
  return degenerate(dwe_spectrum(p, mag), mag, p.crossover());
}

std::pair<Spectrum, Projections> dwe_eigensystem(const DweParams& p, const FreqVector& xi) {
  check_vec(xi, p.n);
  Spectrum s = dwe_spectrum(p, xi.magnitude);
  if (degenerate(s, xi.magnitude, p.crossover()))
    raise(ErrorCode::DegenerateFrequency, "eigenvalues coincide at this frequency");
  const CMatrix m = -dwe_symbol(p, xi);
  const CMatrix id = CMatrix::Identity(2, 2);
  const Complex gap = s.lambda_plus - s.lambda_minus;
  Projections pr;
  pr.pi_plus = (m - s.lambda_minus * id) / gap;
  pr.pi_minus = -(m - s.lambda_plus * id) / gap;
  return {s, pr};
}

CMatrix dwe_propagator(const DweParams& p, const FreqVector& xi, double t) {
  check_vec(xi, p.n);
  require(t >= 0.0 && std::isfinite(t), "propagator time must be finite and non-negative");
  if (dwe_is_degenerate(p, xi.magnitude)) return expm_pade(-t * dwe_symbol(p, xi));
  auto [s, pr] = dwe_eigensystem(p, xi);
  return std::exp(s.lambda_plus * t) * pr.pi_plus + std::exp(s.lambda_minus * t) * pr.pi_minus;
}

// ---------------- per-mode functions ----------------

Complex mode_scalar(ModeFunction kind, Complex lambda, double t) {
  if (kind == ModeFunction::Exp) return std::exp(lambda * t);
  return t * gk(0, lambda * t);
}

BlockCoeffs mode_block(ModeFunction kind, const Spectrum& s, double t) {
  const Complex d = s.delta;
  BlockCoeffs c;
  if (std::abs(d) * t > 0.05) {
    const Complex fp = mode_scalar(kind, s.lambda_plus, t);
    const Complex fm = mode_scalar(kind, s.lambda_minus, t);
    c.f0 = 0.5 * (fp + fm);
    c.f1 = (fp - fm) / (2.0 * d);
    return c;
  }
  // Taylor expansion about the mean in powers of delta^2
  const Complex m(s.mean, 0.0);
  const Complex d2 = d * d;
  Complex pw = 1.0;
  double fact_even = 1.0, fact_odd = 1.0;
  c.f0 = 0.0;
  c.f1 = 0.0;
  for (int k = 0; k < 5; ++k) {
    c.f0 += fderiv(kind, 2 * k, m, t) * pw / fact_even;
    c.f1 += fderiv(kind, 2 * k + 1, m, t) * pw / fact_odd;
    pw *= d2;
    fact_even *= (2 * k + 1) * (2 * k + 2);
    fact_odd *= (2 * k + 2) * (2 * k + 3);
  }
  return c;
}

void cns_apply_mode(const ModelParams& p, const double* xi, ModeFunction kind, double t, Complex* u) {
  const int n = p.n;
  double m2 = 0.0;
  for (int i = 0; i < n; ++i) m2 += xi[i] * xi[i];
  if (m2 == 0.0) {
    if (kind == ModeFunction::Phi1)
      for (int i = 0; i <= n; ++i) u[i] *= t;
    return;
  }
  const double mag = std::sqrt(m2);
  const Spectrum s = cns_spectrum(p, mag);
  const BlockCoeffs bc = mode_block(kind, s, t);
  const Complex f1 = mode_scalar(kind, *s.lambda1, t);
  const double hb = 0.5 * p.a() * m2;
  const double g = p.gamma * mag;

  Complex st = 0.0;
  for (int i = 0; i < n; ++i) st += xi[i] * u[i + 1];
  st /= mag;
  const Complex phi = u[0];
  const Complex phi_new = bc.f0 * phi + bc.f1 * (hb * phi - kI * g * st);
  const Complex st_new = bc.f0 * st + bc.f1 * (-kI * g * phi - hb * st);
  u[0] = phi_new;
  for (int i = 0; i < n; ++i) {
    const double e = xi[i] / mag;
    u[i + 1] = f1 * (u[i + 1] - e * st) + e * st_new;
  }
}

void dwe_apply_mode(const DweParams& p, double mag, ModeFunction kind, double t, Complex* u) {
  const double m2 = mag * mag;
  const Spectrum s = dwe_spectrum(p, mag);
  const BlockCoeffs bc = mode_block(kind, s, t);
  const double hb = 0.5 * p.mu * m2;
  const double c = p.mu_prime * m2;
  const Complex uu = u[0], vv = u[1];
  u[0] = bc.f0 * uu + bc.f1 * (hb * uu + vv);
  u[1] = bc.f0 * vv + bc.f1 * (-c * uu - hb * vv);
}

}  // namespace parspec
