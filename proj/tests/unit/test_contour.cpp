#include "doctest.h"

#include "oracles.hpp"
#include "parspec/contour.hpp"
#include "parspec/decay_fit.hpp"
#include "parspec/error.hpp"
#include "parspec/resolvent_scan.hpp"

#include <cmath>

using namespace parspec;

namespace {
std::vector<double> low_xi_grid(double rinf, int count = 16) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(1e-3 * std::pow(rinf / 1e-3, i / double(count - 1)));
  return v;
}
double rel(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / b.norm(); }
}  // namespace

TEST_CASE("contour geometry") {
  ContourSpec s;
  s.t = 4.0;
  const auto nodes = contour_nodes(s);
  CHECK(nodes.size() == std::size_t(2 * s.nodes_per_branch + s.arc_nodes));
  // ordered upward; double-exponential end nodes may round onto the junction point
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    CHECK(nodes[k].lambda.imag() >= nodes[k - 1].lambda.imag());
    if (std::abs(std::abs(nodes[k].lambda.imag()) - 1.0 / s.t) > 1e-12 && nodes[k].piece == nodes[k - 1].piece)
      CHECK(nodes[k].lambda.imag() > nodes[k - 1].lambda.imag());
  }
  CHECK(branch_tangent(0.7, +1) == Complex(-1.4, 1.0));
  CHECK(branch_tangent(0.7, -1) == Complex(-1.4, -1.0));
  // nodes lie on the parametrized curves
  for (const auto& n : nodes) {
    if (n.piece == 0) {
      CHECK(std::abs(n.lambda) == doctest::Approx(1.0 / s.t).epsilon(1e-14));
      CHECK(n.lambda.real() >= -1e-15);
    } else {
      const double r = std::abs(n.lambda.imag()) - 1.0 / s.t;
      CHECK(n.lambda.real() == doctest::Approx(-r * r).epsilon(1e-12));
    }
  }
  // the default branch length damps the endpoint by e^-36
  const double R = s.branch_length(s.t);
  CHECK(R == doctest::Approx(6.0 / std::sqrt(s.t)));
  CHECK(-R * R * s.t <= -36.0 + 1e-12);
  ContourSpec bad = s;
  bad.r_max = 1.0;
  CHECK_THROWS_AS(contour_nodes(bad), Error);
  try {
    contour_nodes(bad);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationTooSmall);
  }
  // weights integrate d lambda exactly: sum of weights = endpoint difference
  Complex sum = 0.0;
  for (const auto& n : nodes) sum += n.weight;
  const Complex top(-R * R, R + 1.0 / s.t);
  CHECK(std::abs(sum - (top - std::conj(top))) < 1e-10);
}

TEST_CASE("contour semigroup equals the spectral propagator") {
  const ModelParams p;
  const auto xs = low_xi_grid(default_r_infty(p));
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    ContourSpec s;
    s.t = t;
    double worst = 0.0;
    for (double x : xs) {
      const FreqVector xi = FreqVector::along_axis(p.n, x);
      const ContourResult r = semigroup_via_contour(p, xi, t, s);
      worst = std::max(worst, rel(r.value, cns_propagator(p, xi, t)));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("contour semigroup in an oblique direction and in two dimensions") {
  ModelParams p;
  p.n = 2;
  const FreqVector xi(std::vector<double>{0.12, -0.2});
  ContourSpec s;
  s.t = 3.0;
  CHECK(rel(semigroup_via_contour(p, xi, 3.0, s).value, cns_propagator(p, xi, 3.0)) < 1e-6);
}

TEST_CASE("contour parameter can differ from the physical time") {
  const ModelParams p;
  for (double t : {0.5, 5.0}) {
    const FreqVector xi = FreqVector::along_axis(3, 0.2);
    ContourSpec s;
    s.t = 2.0 * t;
    const ContourResult r = semigroup_via_contour(p, xi, t, s);
    CHECK(rel(r.value, cns_propagator(p, xi, t)) < 1e-6);
  }
}

TEST_CASE("node doubling converges at least threefold per step") {
  const ModelParams p;
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    for (double x : {1e-3, 0.05, 0.3}) {
      ContourSpec s;
      s.t = t;
      const ConvergenceStudy st = contour_convergence(p, FreqVector::along_axis(3, x), t, s, 4);
      CHECK(st.min_factor >= 3.0);
      CHECK(st.errors.back() < 1e-6);
    }
  }
  // midpoint variant converges too
  ContourSpec m;
  m.t = 1.0;
  m.quadrature = Quadrature::Midpoint;
  const FreqVector xi = FreqVector::along_axis(3, 0.1);
  CHECK(rel(semigroup_via_contour(p, xi, 1.0, m).value, cns_propagator(p, xi, 1.0)) < 1e-6);
}

TEST_CASE("semigroup law through the contour") {
  const ModelParams p;
  const FreqVector xi = FreqVector::along_axis(3, 0.15);
  auto S = [&](double t) {
    ContourSpec s;
    s.t = t;
    return semigroup_via_contour(p, xi, t, s).value;
  };
  const CMatrix a = S(0.7), b = S(2.3), c = S(3.0);
  CHECK(rel(a * b, c) < 1e-5);
}

TEST_CASE("contour keeps away from the spectrum") {
  ModelParams p;
  ContourSpec s;
  s.t = 10.0;
  const auto xs = low_xi_grid(default_r_infty(p));
  const double m5 = contour_margin(p, s, xs);
  CHECK(m5 > 0.0);
  p.beta = 9.0;  // alpha + beta = 10
  const double m10 = contour_margin(p, s, low_xi_grid(default_r_infty(p)));
  CHECK(m10 >= m5);
}

TEST_CASE("damped wave contour") {
  const DweParams p;
  for (double t : {0.1, 1.0, 10.0}) {
    for (double x : {0.01, 0.1, 0.3}) {
      const FreqVector xi = FreqVector::along_axis(p.n, x);
      ContourSpec s;
      s.t = t;
      CHECK(rel(semigroup_via_contour(p, xi, t, s).value, dwe_propagator(p, xi, t)) < 1e-6);
    }
  }
}

TEST_CASE("adjoint semigroup is the conjugate transpose") {
  const ModelParams p;
  const FreqVector xi = FreqVector::along_axis(3, 0.25);
  const double t = 1.5;
  const CMatrix a = cns_symbol(p, xi);
  const CMatrix adj = oracle::taylor_expm(-t * a.adjoint());
  ContourSpec s;
  s.t = t;
  CHECK(rel(semigroup_via_contour(p, xi, t, s).value.adjoint(), adj) < 1e-6);
}

TEST_CASE("decay fits") {
  Series pw, ex;
  for (int i = 0; i < 16; ++i) {
    const double t = 5.0 * std::pow(40.0, i / 15.0);
    pw.push_back({t, 3.0 * std::pow(1.0 + t, -0.75)});
  }
  const DecayFit f = decay_fit(pw, 5.0, 200.0);
  CHECK(f.exponent == doctest::Approx(-0.75).epsilon(1e-6));
  CHECK(f.samples == 16);
  CHECK(f.power_law);
  CHECK(f.r2 > 0.999999);

  for (int i = 0; i < 16; ++i) ex.push_back({0.5 + i, std::exp(-(0.5 + i))});
  const DecayFit g = decay_fit(ex, 0.0, 20.0);
  CHECK_FALSE(g.power_law);
  const ExpFit e = exponential_fit(ex, 0.0, 20.0);
  CHECK(e.rate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.r2 > 0.999999);

  Series few(pw.begin(), pw.begin() + 7);
  CHECK_THROWS_AS(decay_fit(few, 0.0, 1e9), Error);
  try {
    decay_fit(pw, 5.0, 6.0);
  } catch (const Error& er) {
    CHECK(er.code() == ErrorCode::WindowTooNarrow);
  }
  Series neg = pw;
  neg[3].second = -1.0;
  CHECK_THROWS_AS(decay_fit(neg, 0.0, 1e9), Error);

  Series grow;
  for (int N : {8, 32, 128, 512}) grow.push_back({double(N), 2.0 * std::pow(N, 1.0 / 6.0)});
  CHECK(loglog_fit(grow).exponent == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}
