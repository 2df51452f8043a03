#include "parspec/resolvent.hpp"

#include "parspec/error.hpp"

#include <cmath>
#include <string>

namespace parspec {

namespace {


void check_lambda(Complex lambda) {
  require(std::isfinite(lambda.real()) && std::isfinite(lambda.imag()), "lambda must be finite");
}

void check_on_spectrum(Complex lambda, const Spectrum& s) {
  auto near = [&](Complex mu) { return std::abs(lambda - mu) < kOnSpectrumTol; };
  if (near(s.lambda_plus) || near(s.lambda_minus) || (s.lambda1 && near(*s.lambda1)))
    raise(ErrorCode::OnSpectrum, "lambda lies on the spectrum of -A(xi)");
}

// Formula body, valid for nondegenerate xi != 0 and lambda off the spectrum.
void cns_formula(const ModelParams& p, Complex lambda, const double* xi, double mag, const Spectrum& s,
                 const Complex* f, Complex* out) {
  const int n = p.n;
  const double m2 = mag * mag;
  const Complex d = (lambda - s.lambda_plus) * (lambda - s.lambda_minus);
  Complex xf = 0.0;
  for (int i = 0; i < n; ++i) xf += xi[i] * f[i + 1];
  const Complex f1 = f[0];
  out[0] = ((lambda + p.a() * m2) * f1 - kI * p.gamma * xf) / d;
  const Complex perp = 1.0 / (lambda + p.alpha * m2);
  for (int i = 0; i < n; ++i) {
    const Complex fperp = f[i + 1] - xi[i] * xf / m2;
    out[i + 1] = perp * fperp - kI * p.gamma * xi[i] * f1 / d + lambda * xi[i] * xf / (d * m2);
  }
}

void dense_solve(const CMatrix& a, Complex lambda, const Complex* f, Complex* out) {
  const Eigen::Index m = a.rows();
  CMatrix sys = a;
  for (Eigen::Index i = 0; i < m; ++i) sys(i, i) += lambda;
  CVector rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) rhs(i) = f[i];
  CVector x = sys.fullPivLu().solve(rhs);
  for (Eigen::Index i = 0; i < m; ++i) out[i] = x(i);
}

}  // namespace

CVector cns_resolvent_apply(const ModelParams& p, Complex lambda, const FreqVector& xi, const CVector& f) {
  p.validate();
  check_lambda(lambda);
  require(xi.dim() == p.n, "frequency dimension mismatch");
  require(f.size() == p.n + 1, "forcing must have n+1 components");
  const Spectrum s = cns_spectrum(p, xi.magnitude);
  if (cns_is_degenerate(p, xi.magnitude))
    raise(ErrorCode::DegenerateFrequency, "resolvent formula undefined at degenerate frequency");
  if (p.n == 1) {
    // lambda_1 is not an eigenvalue when the transverse space is trivial
    Spectrum s2 = s;
    s2.lambda1.reset();
    check_on_spectrum(lambda, s2);
  } else {
    check_on_spectrum(lambda, s);
  }
  CVector out(p.n + 1);
  cns_formula(p, lambda, xi.xi.data(), xi.magnitude, s, f.data(), out.data());
  return out;
}

CVector dwe_resolvent_apply(const DweParams& p, Complex lambda, const FreqVector& xi, const CVector& f) {
  p.validate();
  check_lambda(lambda);
  require(xi.dim() == p.n, "frequency dimension mismatch");
  require(f.size() == 2, "forcing must have 2 components");
  const Spectrum s = dwe_spectrum(p, xi.magnitude);
  if (dwe_is_degenerate(p, xi.magnitude))
    raise(ErrorCode::DegenerateFrequency, "resolvent formula undefined at degenerate frequency");
  check_on_spectrum(lambda, s);
  const Complex d = (lambda - s.lambda_plus) * (lambda - s.lambda_minus);
  CVector out(2);
  out(0) = f(1) / d;
  out(1) = -f(0) + lambda * f(1) / d;
  return out;
}

CVector dwe_first_order_resolvent(const DweParams& p, Complex lambda, const FreqVector& xi, const CVector& f) {
  require(f.size() == 2, "forcing must have 2 components");
  CVector g(2);
  g(0) = f(0);
  g(1) = f(1) + (lambda + p.mu * xi.magnitude * xi.magnitude) * f(0);
  return dwe_resolvent_apply(p, lambda, xi, g);
}

void cns_resolvent_mode(const ModelParams& p, Complex lambda, const double* xi, const Complex* f, Complex* out) {
  double m2 = 0.0;
  for (int i = 0; i < p.n; ++i) m2 += xi[i] * xi[i];
  if (m2 == 0.0) {
    for (int i = 0; i <= p.n; ++i) out[i] = f[i] / lambda;
    return;
  }
  const double mag = std::sqrt(m2);
  const Spectrum s = cns_spectrum(p, mag);
  if (cns_is_degenerate(p, mag)) {
    FreqVector fv(std::vector<double>(xi, xi + p.n));
    dense_solve(cns_symbol(p, fv), lambda, f, out);
    return;
  }
  cns_formula(p, lambda, xi, mag, s, f, out);
}

void dwe_first_order_resolvent_mode(const DweParams& p, Complex lambda, double mag, const Complex* f,
                                    Complex* out) {
  const double m2 = mag * mag;
  const Spectrum s = dwe_spectrum(p, mag);
  const Complex d = (lambda - s.lambda_plus) * (lambda - s.lambda_minus);
  const Complex g = f[1] + (lambda + p.mu * m2) * f[0];
  out[0] = g / d;
  out[1] = -f[0] + lambda * g / d;
}

}  // namespace parspec
