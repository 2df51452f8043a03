#include "doctest.h"

#include "parspec/counterexample.hpp"
#include "parspec/error.hpp"
#include "parspec/freq_split.hpp"
#include "parspec/norms.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

using namespace parspec;

namespace {

CounterexampleSpec spec_n(int N) {
  CounterexampleSpec s;
  s.N = N;
  return s;
}

const Grid& small_grid() {
  static const Grid g = counterexample_grid(32, CounterexampleSpec{});
  return g;
}

double sum_a2(const CounterexampleSpec& s) {
  double t = 0.0;
  for (int k = 1; k <= s.N; ++k) t += std::pow(k, -2.0 / 3.0);
  return t;
}

}  // namespace

TEST_CASE("grid layout and box checks") {
  const Grid& g = small_grid();
  CHECK(g.points[0] == 2048);
  CHECK(g.spacing(0) == doctest::Approx(1.0 / 3.0));
  CHECK(g.spacing(1) == doctest::Approx(1.0 / 3.0));
  CHECK(snapped_spacing(spec_n(4), g) == doctest::Approx(16.0).epsilon(1e-14));
  try {
    build_fN(spec_n(64), g);
    FAIL("expected BoxTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoxTooSmall);
  }
  CounterexampleSpec bad;
  bad.L = 1.5;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK(spec_n(1).amplitude(8) == doctest::Approx(0.5));
}

TEST_CASE("psi has zero mean and f_1 is a single copy") {
  const Grid& g = small_grid();
  const Field psi = psi_field(spec_n(1), g);
  double s = 0.0, a = 0.0;
  for (double v : psi[0]) {
    s += v;
    a += std::abs(v);
  }
  CHECK(std::abs(s) <= 1e-12 * a);
  const Field f1 = build_fN(spec_n(1), g);
  CHECK(lp_norm(f1, INFINITY) == lp_norm(psi, INFINITY));
  CHECK(physical_l2_sq(f1) == doctest::Approx(physical_l2_sq(psi)).epsilon(1e-14));
}

TEST_CASE("disjoint supports: sup norm, L2 identity and distribution bound") {
  const Grid& g = small_grid();
  const Field psi = psi_field(spec_n(1), g);
  const double psi_inf = lp_norm(psi, INFINITY), psi_l2 = physical_l2_sq(psi);
  std::size_t supp = 0;
  for (double v : psi[0]) supp += v != 0.0;
  const double supp_measure = supp * g.cell_volume();
  for (int N : {1, 4, 16, 32}) {
    CAPTURE(N);
    const CounterexampleSpec s = spec_n(N);
    const Field f = build_fN(s, g);
    CHECK(lp_norm(f, INFINITY) == psi_inf);
    CHECK(physical_l2_sq(f) == doctest::Approx(sum_a2(s) * psi_l2).epsilon(1e-12));
    const RearrangementTable t = RearrangementTable::of(f);
    for (double lam : {0.01, 0.05, 0.1, 0.2, 0.4, 0.7}) {
      int count = 0;
      for (int k = 1; k <= N; ++k) count += s.amplitude(k) * psi_inf > lam;
      CHECK(t.distribution(lam) <= supp_measure * count);
    }
  }
}

TEST_CASE("weak L3 norm: two evaluations, homogeneity, boundedness") {
  const Grid& g = small_grid();
  double first = 0.0;
  for (int N : {1, 8, 32}) {
    const CounterexampleSpec s = spec_n(N);
    const Field f = build_fN(s, g);
    const double a = lorentz_norm(f, LorentzExp{3.0, INFINITY});
    const double b = weak_norm_by_distribution(f, 3.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
    CHECK(fN_lorentz3(s, g) == a);
    if (N == 1) {
      first = a;
      CHECK(a == doctest::Approx(lorentz_norm(psi_field(s, g), LorentzExp{3.0, INFINITY})).epsilon(1e-15));
    }
    CHECK(a / first < 1.2);
  }
  CounterexampleSpec dbl = spec_n(8);
  dbl.psi_amplitude = 2.0;
  CHECK(fN_lorentz3(dbl, g) == doctest::Approx(2.0 * fN_lorentz3(spec_n(8), g)).epsilon(1e-14));
}

TEST_CASE("cross terms of the dyadic block") {
  const Grid& g = small_grid();
  const CounterexampleSpec s = spec_n(16);
  const CrossTerms c = cross_terms(s, g);
  REQUIRE(c.correlation.size() == 15);
  // the block energy of f_N splits exactly into diagonal and cross parts
  const BesovProfile bp = besov_profile(to_spectral(build_fN(s, g)), 0.0);
  double blk = 0.0;
  for (std::size_t i = 0; i < bp.j.size(); ++i)
    if (bp.j[i] == c.j0) blk = bp.block_l2[i];
  CHECK(blk * blk == doctest::Approx(c.main_term + c.signed_cross).epsilon(1e-10));
  // nearest-neighbour correlation from two unit translates
  CounterexampleSpec pair = spec_n(2);
  pair.amplitude_power = 0.0;
  const BesovProfile pp = besov_profile(to_spectral(build_fN(pair, g)), 0.0);
  double b2 = 0.0;
  for (std::size_t i = 0; i < pp.j.size(); ++i)
    if (pp.j[i] == c.j0) b2 = pp.block_l2[i];
  CHECK((b2 * b2 - 2.0 * c.block_sq) / 2.0 == doctest::Approx(c.correlation[0]).epsilon(1e-6).scale(1e-12 * c.block_sq));
  // pairwise bound with the measured constant, and the sequence-Young bound
  for (std::size_t m = 1; m <= c.correlation.size(); ++m)
    CHECK(std::abs(c.correlation[m - 1]) <= c.constant * c.block_sq / (s.L * s.L * m * m) * (1 + 1e-12));
  CHECK(c.budget <= c.young_bound * (1 + 1e-12));
  CHECK(c.budget < 0.01 * c.main_term);
}

TEST_CASE("study rows: lower-bound ratio, monotonicity, reports") {
  const Grid& g = small_grid();
  const CounterexampleStudy st = fN_study(CounterexampleSpec{}, {4, 8, 16, 32}, g);
  REQUIRE(st.rows.size() == 4);
  const double r0 = st.rows.front().lower_bound_ratio;
  for (const auto& r : st.rows) {
    CHECK(r.lower_bound_ratio == doctest::Approx(r0).epsilon(0.01));
    CHECK(r.lorentz3 == doctest::Approx(r.lorentz3_distribution).epsilon(1e-9));
    CHECK(r.besov_half >= r.block_j0);
  }
  for (std::size_t i = 1; i < st.rows.size(); ++i) {
    CHECK(st.rows[i].monotone_slack >= 0.0);
    CHECK(st.rows[i].besov_half > st.rows[i - 1].besov_half);
  }
  CHECK(st.growth.exponent > 0.1);
  CHECK(st.bounded);
  const std::string csv = to_csv(st);
  CHECK(csv.rfind("N,lorentz3,besov_half\n4,", 0) == 0);
  const auto j = nlohmann::json::parse(to_json(st));
  CHECK(j["bounded"] == true);
  CHECK(j["N"].size() == 4);
  CHECK(j["growth_ci95"].size() == 2);
}

TEST_CASE("weighted profile in the half Besov space") {
  const Grid g = Grid::cubic(3, 32, 32.0);
  WeightedProfileSpec w;
  const Field v = weighted_profile(w, g);
  CHECK(weighted_linf_norm(v, 1.0) <= w.M1 * (1 + 1e-12));
  CHECK(weighted_linf_norm(to_physical(gradient(to_spectral(v), 0)), 2.0) <= w.M2 * (1 + 1e-12));
  const WeightedProfileReport r = weighted_profile_in_besov(w, g);
  CHECK(std::isfinite(r.half_norm));
  CHECK(r.half_norm == std::max(r.small_shift_sup, r.large_shift_sup));
  CHECK(r.constant > 0.0);
  CHECK(r.refinement_change < 0.1);
  WeightedProfileSpec half = w;
  half.M1 = 0.5;
  half.M2 = 5.0;
  CHECK(weighted_profile_in_besov(half, g, false).half_norm == doctest::Approx(0.5 * r.half_norm).epsilon(1e-12));
  CHECK(besov_halfnorm_fd(Field(g, 1), 0.5) == 0.0);
  CHECK_THROWS_AS(weighted_profile(WeightedProfileSpec{0.0, 1.0}, g), Error);
}
