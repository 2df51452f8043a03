#include "doctest.h"
#include "oracles.hpp"
#include "parspec/error.hpp"
#include "parspec/resolvent.hpp"

#include <random>

using namespace parspec;

namespace {

CVector random_cvec(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(m);
  for (int i = 0; i < m; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

Complex random_lambda(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  return Complex(u(rng), u(rng));
}

CMatrix shifted(const CMatrix& a, Complex lam) {
  CMatrix m = a;
  for (int i = 0; i < m.rows(); ++i) m(i, i) += lam;
  return m;
}

}  // namespace

TEST_CASE("cns resolvent matches Gaussian elimination") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> mags(-4.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + trial % 4;
    ModelParams p{n, 1.0 + trial % 3, 4.0, 1.0};
    const double mag = std::pow(10.0, mags(rng));
    if (cns_is_degenerate(p, mag)) continue;
    FreqVector xi(oracle::scaled(oracle::random_direction(rng, n), mag));
    const Complex lam = random_lambda(rng);
    const CVector f = random_cvec(rng, n + 1);
    const CVector got = cns_resolvent_apply(p, lam, xi, f);
    const CVector expect = oracle::gauss_solve(shifted(cns_symbol(p, xi), lam), f);
    CHECK((got - expect).norm() <= 1e-10 * expect.norm());
    const CVector resid = shifted(cns_symbol(p, xi), lam) * got - f;
    CHECK(resid.norm() <= 1e-10 * f.norm() * std::max(1.0, std::abs(lam)));
  }
}

TEST_CASE("cns resolvent displayed examples") {
  ModelParams p{3, 1.0, 4.0, 1.0};
  FreqVector xi({0.1, -0.05, 0.2});
  const Complex lam(0.3, 0.7);
  CHECK(cns_resolvent_apply(p, lam, xi, CVector::Zero(4)).norm() == 0.0);
  CVector f = CVector::Zero(4);
  f(0) = Complex(1.5, -0.5);
  const CVector u = cns_resolvent_apply(p, lam, xi, f);
  const Spectrum s = cns_spectrum(p, xi.magnitude);
  const Complex d = (lam - s.lambda_plus) * (lam - s.lambda_minus);
  for (int i = 0; i < 3; ++i) {
    const Complex expect = -Complex(0, 1) * p.gamma * xi.xi[i] * f(0) / d;
    CHECK(std::abs(u(i + 1) - expect) < 1e-14);
  }
}

TEST_CASE("resolvent errors") {
  ModelParams p{3, 1.0, 4.0, 1.0};
  CVector f = CVector::Ones(4);
  CHECK_THROWS_AS(cns_resolvent_apply(p, 1.0, FreqVector::along_axis(3, 0.4), f), Error);
  const Spectrum s = cns_spectrum(p, 0.2);
  try {
    cns_resolvent_apply(p, s.lambda_plus, FreqVector::along_axis(3, 0.2), f);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OnSpectrum);
  }
  try {
    cns_resolvent_apply(p, 1.0, FreqVector::along_axis(3, 0.0), f);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateFrequency);
  }
}

TEST_CASE("dwe resolvent formula solves the eliminated system") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mags(-4.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    DweParams p{3, 5.0 + trial % 4, 1.0 + 0.25 * (trial % 3)};
    const double mag = std::pow(10.0, mags(rng));
    if (dwe_is_degenerate(p, mag)) continue;
    FreqVector xi = FreqVector::along_axis(3, mag);
    const Complex lam = random_lambda(rng);
    const CVector f = random_cvec(rng, 2);
    const Complex d = lam * lam + p.mu * mag * mag * lam + p.mu_prime * mag * mag;
    CMatrix sys(2, 2);
    sys << lam, -1.0, d, 0.0;
    const CVector expect = oracle::gauss_solve(sys, f);
    const CVector got = dwe_resolvent_apply(p, lam, xi, f);
    CHECK((got - expect).norm() <= 1e-10 * expect.norm());
    // first-order resolvent against (lambda + A)
    const CVector g1 = dwe_first_order_resolvent(p, lam, xi, f);
    const CVector e1 = oracle::gauss_solve(shifted(dwe_symbol(p, xi), lam), f);
    CHECK((g1 - e1).norm() <= 1e-10 * e1.norm());
  }
}

TEST_CASE("dwe displayed examples") {
  DweParams p{3, 5.0, 1.0};
  FreqVector xi = FreqVector::along_axis(3, 0.2);
  CVector f(2);
  f << Complex(0.7, 0.1), 0.0;
  const CVector u = dwe_resolvent_apply(p, Complex(0.5, 0.5), xi, f);
  CHECK(std::abs(u(0)) == 0.0);
  CHECK(std::abs(u(1) + f(0)) < 1e-15);
  CHECK(dwe_resolvent_apply(p, Complex(0.5, 0.5), xi, CVector::Zero(2)).norm() == 0.0);
}

TEST_CASE("resolvent identity") {
  std::mt19937_64 rng(9);
  ModelParams p{3, 1.0, 4.0, 1.0};
  for (int trial = 0; trial < 300; ++trial) {
    FreqVector xi(oracle::scaled(oracle::random_direction(rng, 3), 0.01 + 0.3 * (trial % 10) / 10.0));
    const Complex l = random_lambda(rng), m = random_lambda(rng);
    const CVector f = random_cvec(rng, 4);
    const CVector lhs = cns_resolvent_apply(p, l, xi, f) - cns_resolvent_apply(p, m, xi, f);
    const CVector rhs = (m - l) * cns_resolvent_apply(p, l, xi, cns_resolvent_apply(p, m, xi, f));
    CHECK((lhs - rhs).norm() <= 1e-9 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("per-mode resolvent handles zero and degenerate frequencies") {
  ModelParams p{3, 1.0, 4.0, 1.0};
  const Complex lam(0.2, 0.1);
  Complex f[4] = {1.0, 2.0, 3.0, 4.0}, out[4];
  double z[3] = {0, 0, 0};
  cns_resolvent_mode(p, lam, z, f, out);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(out[i] - f[i] / lam) < 1e-14);
  double xc[3] = {0.4, 0.0, 0.0};
  cns_resolvent_mode(p, lam, xc, f, out);
  CVector fv(4), ov(4);
  for (int i = 0; i < 4; ++i) {
    fv(i) = f[i];
    ov(i) = out[i];
  }
  CMatrix sys = shifted(cns_symbol(p, FreqVector::along_axis(3, 0.4)), lam);
  CHECK((sys * ov - fv).norm() < 1e-12);
}
