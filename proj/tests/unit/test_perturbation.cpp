#include "doctest.h"

#include "parspec/error.hpp"
#include "parspec/freq_split.hpp"
#include "parspec/norms.hpp"
#include "parspec/perturbed_resolvent.hpp"

#include <cmath>
#include <random>

using namespace parspec;

namespace {

Grid small_grid() { return Grid::cubic(3, 16, 16.0); }

CutoffSpec wide_cutoff() {
  CutoffSpec c;
  c.r1p = 0.25;
  c.rinfp = 0.5;
  return c;
}

SyntheticProfile cns_profile(double eps) {
  ProfileOptions o;
  o.epsilon = eps;
  return make_cns_profile(small_grid(), o);
}

SpectralField random_state(int comps, std::uint64_t seed, double cap = 3.0) {
  std::mt19937_64 rng(seed);
  SpectralField s = random_band_limited(small_grid(), comps, cap, rng);
  drop_nyquist(s);
  return s;
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  double num = 0.0, den = 0.0;
  for (int c = 0; c < a.components; ++c)
    for (std::size_t i = 0; i < a[c].size(); ++i) {
      num += std::norm(a[c][i] - b[c][i]);
      den += std::norm(b[c][i]);
    }
  return std::sqrt(num / den);
}

// Term-by-term B u from the linearized momentum and mass equations, built with
// the generic derivative helpers and pointwise loops.
SpectralField cns_B_oracle(const ModelParams& p, const SyntheticProfile& prof, const SpectralField& u) {
  const Grid& g = u.grid;
  const int n = g.dim;
  const std::size_t N = g.size();
  SpectralField us_phi(g, 1), us_w(g, n);
  us_phi[0] = u[0];
  for (int i = 0; i < n; ++i) us_w[i] = u[i + 1];
  const Field ph = to_physical(us_phi), w = to_physical(us_w);
  const Field gph = to_physical(gradient(u, 0));
  const Field divw = to_physical(divergence(u, 1));
  const SpectralField pws = to_spectral(prof.phi), wws = to_spectral(prof.w);
  const Field gpw = to_physical(gradient(pws, 0));
  const Field divww = to_physical(divergence(wws, 0));
  const Field graddivww = to_physical(gradient(divergence(wws, 0), 0));
  const Field graddivw = to_physical(gradient(divergence(u, 1), 0));
  std::vector<Field> gw(n), gww(n), lapw(n), lapww(n);
  for (int i = 0; i < n; ++i) {
    gw[i] = to_physical(gradient(u, i + 1));
    gww[i] = to_physical(gradient(wws, i));
    lapw[i] = to_physical(laplacian(u, i + 1));
    lapww[i] = to_physical(laplacian(wws, i));
  }
  const double a = p.alpha, b = p.beta, gm = p.gamma, g2 = gm * gm;
  Field out(g, n + 1);
  for (std::size_t q = 0; q < N; ++q) {
    const double pw = prof.phi[0][q];
    const double h = -1.0 / (1.0 + pw);
    double b11 = ph[0][q] * divww[0][q], b12 = pw * divw[0][q];
    for (int j = 0; j < n; ++j) {
      b11 += w[j][q] * gpw[j][q];
      b12 += prof.w[j][q] * gph[j][q];
    }
    out[0][q] = gm * (b11 + b12);
    for (int i = 0; i < n; ++i) {
      double b21 = -(a / g2) * h * ph[0][q] * lapww[i][0][q] - (b / g2) * h * ph[0][q] * graddivww[i][q] +
                   h * ph[0][q] * gpw[i][q];
      double b22 = h * pw * gph[i][q];
      for (int j = 0; j < n; ++j) {
        b21 += w[j][q] * gww[i][j][q];
        b22 += prof.w[j][q] * gw[i][j][q];
      }
      const double b23 = -(a / g2) * h * pw * lapw[i][0][q] - (b / g2) * h * pw * graddivw[i][q];
      out[i + 1][q] = gm * (b21 + b22 + b23);
    }
  }
  SpectralField s = to_spectral(out);
  drop_nyquist(s);
  return s;
}

}  // namespace

TEST_CASE("cns profile invariants") {
  const double eps = 0.02;
  const SyntheticProfile p = cns_profile(eps);
  CHECK(p.kind == ProfileKind::CnsStationary);
  CHECK(p.invariant("weighted_linf(phi,1)") <= 2 * eps);
  CHECK(p.invariant("weighted_linf(grad phi,2)") <= 2 * eps);
  CHECK(p.invariant("Hs(grad u)") <= 2 * eps);
  CHECK(p.smallness <= eps * (1 + 1e-12));
  for (const auto& kv : p.invariants) CHECK(kv.second <= eps * (1 + 1e-12));
  CHECK(p.invariant("sup|phi|") < 0.5);
  // solenoidal velocity
  const SpectralField ws = to_spectral(p.w);
  const double div = std::sqrt(spectral_l2_sq(divergence(ws, 0)));
  CHECK(div < 1e-12 * std::sqrt(spectral_l2_sq(ws)));
  // periodizing cutoff is exactly 1 inside 0.35 L and 0 beyond 0.45 L
  CHECK(periodizing_cutoff(0.3, 1.0) == 1.0);
  CHECK(periodizing_cutoff(0.46, 1.0) == 0.0);
  CHECK_THROWS_AS(cns_profile(0.2), Error);
}

TEST_CASE("dwe profile invariants") {
  ProfileOptions o;
  o.epsilon = 0.01;
  const SyntheticProfile p = make_dwe_profile(small_grid(), o);
  CHECK(p.smallness == doctest::Approx(0.01).epsilon(1e-12));
  double sum = 0.0;
  for (const auto& kv : p.invariants) sum += kv.second;
  CHECK(sum == doctest::Approx(p.smallness).epsilon(1e-12));
  // scaling is linear in every invariant
  const SyntheticProfile q = scaled(p, 0.5);
  CHECK(q.smallness == doctest::Approx(0.005).epsilon(1e-12));
  CHECK(lp_norm(q.b3, INFINITY) == doctest::Approx(0.5 * lp_norm(p.b3, INFINITY)).epsilon(1e-14));
}

TEST_CASE("cns perturbation matches the term-by-term oracle") {
  ModelParams mp;
  mp.alpha = 1.3;
  mp.beta = 2.1;
  mp.gamma = 1.4;
  const SyntheticProfile prof = cns_profile(0.05);
  const CnsPerturbation B(mp, prof);
  const SpectralField u = random_state(4, 11);
  const SpectralField got = B.apply(u);
  const SpectralField want = cns_B_oracle(mp, prof, u);
  CHECK(rel_diff(got, want) < 1e-8);
  // linear in u and in the profile amplitude at leading order
  SpectralField u2 = u;
  for (auto& a : u2.data)
    for (auto& v : a) v *= 3.0;
  CHECK(rel_diff(B.apply(u2), [&] {
          SpectralField s = got;
          for (auto& a : s.data)
            for (auto& v : a) v *= 3.0;
          return s;
        }()) < 1e-12);
  // zero profile gives a zero operator
  const CnsPerturbation Z(mp, cns_profile(0.0));
  CHECK(std::sqrt(spectral_l2_sq(Z.apply(u))) == 0.0);
  // low-only variant is P_1 of the full one
  const CnsPerturbation B1(mp, prof, PressureLaw{}, wide_cutoff());
  CHECK(rel_diff(B1.apply(u), project_low(got, wide_cutoff())) < 1e-14);
  // serial and parallel agree bitwise
  CHECK(rel_diff(B.apply(u, Exec::Serial), B.apply(u, Exec::Parallel)) == 0.0);
}

TEST_CASE("dwe perturbation matches a direct evaluation") {
  DweParams dp;
  ProfileOptions o;
  o.epsilon = 0.05;
  const SyntheticProfile prof = make_dwe_profile(small_grid(), o);
  const DwePerturbation B(dp, prof);
  const SpectralField U = random_state(2, 5);
  const SpectralField got = B.apply(U);
  const Grid& g = U.grid;
  const Field u = to_physical(U);
  const Field gu = to_physical(gradient(U, 0));
  const Field lu = to_physical(laplacian(U, 0));
  const Field db1 = to_physical(divergence(to_spectral(prof.b1), 0));
  Field out(g, 2);
  for (std::size_t q = 0; q < g.size(); ++q) {
    double v = u[0][q] * db1[0][q] + prof.b3[0][q] * lu[0][q];
    for (int j = 0; j < 3; ++j) v += prof.b2[j][q] * gu[j][q];
    out[1][q] = v;
  }
  SpectralField want = to_spectral(out);
  drop_nyquist(want);
  CHECK(rel_diff(got, want) < 1e-8);
  CHECK(std::sqrt(spectral_l2_sq([&] {
          SpectralField s(g, 1);
          s[0] = got[0];
          return s;
        }())) == 0.0);
}

TEST_CASE("pressure law and stability bounds") {
  CHECK(PressureLaw{1.0}.p1(0.3, 1.0) == 0.0);
  // kappa = 2: p'' = gamma^2, so p1 = gamma / 2
  CHECK(PressureLaw{2.0}.p1(0.3, 1.7) == doctest::Approx(0.85).epsilon(1e-13));
  // kappa = 3: p'' = 2 gamma^2 rho, p1 = 2 gamma int (1-t)(1+t phi) = gamma (1 + phi/3)
  CHECK(PressureLaw{3.0}.p1(0.3, 1.0) == doctest::Approx(1.1).epsilon(1e-13));
  CHECK(h1(0.25) == doctest::Approx(-0.8));

  CoefficientSups s{0.1, 0.2, 0.05};
  CHECK_NOTHROW(check_cfl(s, 1.0, 1.0, 0.1, 10.0));
  try {
    check_cfl(s, 1.0, 1.0, 1.0, 10.0);
    FAIL("expected CFLViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CFLViolation);
  }
  CHECK_THROWS_AS(check_cfl(CoefficientSups{0.0, 0.0, 0.6}, 1.0, 1.0, 1e-3, 1.0), Error);
  CHECK(max_resolved_xi(Grid::cubic(3, 16, 2 * kPi)) == doctest::Approx(7.0 * std::sqrt(3.0)));
}

TEST_CASE("free resolvent pair inverts lambda + A") {
  ModelParams mp;
  const SyntheticProfile zero = cns_profile(0.0);
  const CnsPerturbation Z(mp, zero);
  const ComplexField F(random_state(4, 3));
  for (Complex lam : {Complex(0.5, 0.3), Complex(-0.01, 2.0), Complex(2.0, -1.0)}) {
    const ComplexField G = free_resolvent(mp, lam, F);
    const ComplexField back = shifted_operator(Z, lam, G);
    ComplexField d = back;
    axpy(d, -1.0, F);
    CHECK(l2_norm(d) < 1e-13 * l2_norm(F));
    // imaginary part vanishes for real lambda and real data
    if (lam.imag() == 0.0) CHECK(l2_norm(ComplexField(G.im)) == 0.0);
  }
  // real lambda: R(lambda) maps real data to real data
  const ComplexField G = free_resolvent(mp, Complex(0.7, 0.0), F);
  CHECK(std::sqrt(spectral_l2_sq(G.im)) < 1e-15 * std::sqrt(spectral_l2_sq(G.re)));
}

TEST_CASE("neumann series: zero profile, residual, contraction scaling") {
  ModelParams mp;
  const CutoffSpec cut = wide_cutoff();
  const SpectralField f = project_low(random_state(4, 17, 1.0), cut);
  const Complex lam(0.2, 0.5);

  SUBCASE("zero profile gives the free resolvent in one term") {
    const CnsPerturbation Z(mp, cns_profile(0.0), PressureLaw{}, cut);
    const NeumannReport r = perturbed_resolvent(Z, lam, ComplexField(f));
    CHECK(r.terms == 1);
    const ComplexField R0 = free_resolvent(mp, lam, ComplexField(f));
    ComplexField d = r.value;
    axpy(d, -1.0, R0);
    CHECK(l2_norm(d) == 0.0);
  }

  SUBCASE("residual of (lambda + A + P1 B) applied to the sum") {
    const CnsPerturbation B(mp, cns_profile(0.05), PressureLaw{}, cut);
    NeumannOptions o;
    o.tol = 1e-12;
    const NeumannReport r = perturbed_resolvent(B, lam, ComplexField(f), o);
    CHECK(r.terms > 2);
    CHECK(r.contraction < 0.95);
    ComplexField res = shifted_operator(B, lam, r.value);
    axpy(res, -1.0, ComplexField(f));
    // the omitted tail is bounded by the last term over (1 - ratio)
    const double tail = r.term_norms.back() / (1.0 - r.contraction);
    const double rnorm = l2_norm(res);
    CHECK(rnorm <= 1e-9 * l2_norm(ComplexField(f)) + 10.0 * tail);
    // the field-level convenience form agrees
    const NeumannReport r2 = perturbed_resolvent(mp, cns_profile(0.05), cut, lam, to_physical(f), o);
    ComplexField d = r2.value;
    axpy(d, -1.0, r.value);
    CHECK(l2_norm(d) < 1e-10 * l2_norm(r.value));
  }

  SUBCASE("halving epsilon halves the contraction ratio") {
    const CnsPerturbation Bf(mp, cns_profile(0.08), PressureLaw{}, cut);
    const CnsPerturbation Bh(mp, cns_profile(0.04), PressureLaw{}, cut);
    const double cf = perturbed_resolvent(Bf, lam, ComplexField(f)).contraction;
    const double ch = perturbed_resolvent(Bh, lam, ComplexField(f)).contraction;
    CHECK(ch / cf == doctest::Approx(0.5).epsilon(0.25));
  }

  SUBCASE("failure modes") {
    // near the zero mode R_0 ~ 1/lambda, so a strong profile makes the terms grow
    const SyntheticProfile big = scaled(cns_profile(0.05), 400.0);
    const CnsPerturbation Bb(mp, big, PressureLaw{}, cut);
    try {
      perturbed_resolvent(Bb, Complex(1e-5, 0.0), ComplexField(f));
      FAIL("expected NoContraction");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoContraction);
    }
    const CnsPerturbation B(mp, cns_profile(0.05), PressureLaw{}, cut);
    NeumannOptions o;
    o.max_terms = 2;
    try {
      perturbed_resolvent(B, lam, ComplexField(f), o);
      FAIL("expected MaxTermsExceeded");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MaxTermsExceeded);
    }
  }
}

TEST_CASE("dwe neumann residual") {
  DweParams dp;
  ProfileOptions o;
  o.epsilon = 0.05;
  const DwePerturbation B(dp, make_dwe_profile(small_grid(), o));
  const SpectralField f = random_state(2, 23, 1.5);
  const Complex lam(0.3, 0.4);
  NeumannOptions no;
  no.tol = 1e-12;
  const NeumannReport r = perturbed_resolvent(B, lam, ComplexField(f), no);
  ComplexField res = shifted_operator(B, lam, r.value);
  axpy(res, -1.0, ComplexField(f));
  CHECK(l2_norm(res) < 1e-9 * l2_norm(ComplexField(f)));
}
