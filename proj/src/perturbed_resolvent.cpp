#include "parspec/perturbed_resolvent.hpp"

#include "parspec/error.hpp"
#include "parspec/freq_split.hpp"
#include "parspec/kernels.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace parspec {

ComplexField::ComplexField(const SpectralField& real_part)
    : re(real_part), im(real_part.grid, real_part.components, real_part.support) {}

ComplexField::ComplexField(const Grid& g, int comps) : re(g, comps), im(g, comps) {}

double l2_norm(const ComplexField& f) {
  const Exec ex = default_exec();
  return std::sqrt(kernels::sobolev_sq(f.re, 0.0, false, ex) + kernels::sobolev_sq(f.im, 0.0, false, ex));
}

namespace {

void axpy_spec(SpectralField& a, double s, const SpectralField& b) {
  for (int c = 0; c < a.components; ++c) {
    Complex* pa = a.data[c].data();
    const Complex* pb = b.data[c].data();
    const std::size_t n = a.data[c].size();
    for (std::size_t i = 0; i < n; ++i) pa[i] += s * pb[i];
  }
}

void scale_spec(SpectralField& a, double s) {
  for (auto& arr : a.data)
    for (Complex& v : arr) v *= s;
}

// lambda * (re + i im)
ComplexField times_lambda(Complex lambda, const ComplexField& g) {
  ComplexField out = g;
  scale_spec(out.re, lambda.real());
  axpy_spec(out.re, -lambda.imag(), g.im);
  scale_spec(out.im, lambda.real());
  axpy_spec(out.im, lambda.imag(), g.re);
  return out;
}

// Real symbol multiplication, applied to each part separately.
SpectralField apply_symbol(const ModelParams& p, const SpectralField& u) {
  SpectralField out(u.grid, u.components, u.support);
  const int n = p.n;
  for_each_mode(u.grid, [&](std::size_t idx, const double* k, double, bool) {
    double m2 = 0.0;
    Complex kw = 0.0;
    for (int j = 0; j < n; ++j) {
      m2 += k[j] * k[j];
      kw += k[j] * u.data[j + 1][idx];
    }
    const Complex phi = u.data[0][idx];
    out.data[0][idx] = kI * p.gamma * kw;
    for (int i = 0; i < n; ++i)
      out.data[i + 1][idx] = kI * p.gamma * k[i] * phi + p.alpha * m2 * u.data[i + 1][idx] + p.beta * k[i] * kw;
  });
  return out;
}

SpectralField apply_symbol(const DweParams& p, const SpectralField& u) {
  SpectralField out(u.grid, 2, u.support);
  for_each_mode(u.grid, [&](std::size_t idx, const double* k, double, bool) {
    const double m2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    const Complex a = u.data[0][idx], b = u.data[1][idx];
    out.data[0][idx] = -b;
    out.data[1][idx] = p.mu_prime * m2 * a + p.mu * m2 * b;
  });
  return out;
}

template <class Op>
ComplexField apply_B(const Op& B, const ComplexField& g, Exec ex) {
  ComplexField out;
  out.re = B.apply(g.re, ex);
  out.im = B.apply(g.im, ex);
  return out;
}

template <class Op>
NeumannReport neumann(const Op& B, Complex lambda, const ComplexField& F, const NeumannOptions& o, Exec ex) {
  o.validate();
  require(F.re.grid == B.grid() && F.im.grid == B.grid(), "data grid must match the perturbation grid");
  NeumannReport r;
  ComplexField term = free_resolvent(B.params(), lambda, F, ex);
  r.value = term;
  double prev = l2_norm(term);
  r.term_norms.push_back(prev);
  r.terms = 1;
  if (prev == 0.0) return r;
  int above = 0;
  for (;;) {
    ComplexField next = free_resolvent(B.params(), lambda, apply_B(B, term, ex), ex);
    const double nn = l2_norm(next);
    if (nn == 0.0) break;
    const double ratio = nn / prev;
    r.ratios.push_back(ratio);
    above = ratio > o.contraction_limit ? above + 1 : 0;
    if (above >= o.patience) {
      std::ostringstream os;
      os << "Neumann terms stopped contracting (ratio " << ratio << " for " << above << " consecutive terms)";
      raise(ErrorCode::NoContraction, os.str());
    }
    // the sign of the series alternates: term_{j+1} = -R0 B term_j
    axpy(r.value, -1.0, next);
    r.term_norms.push_back(nn);
    ++r.terms;
    if (nn <= o.tol * l2_norm(r.value)) break;
    if (r.terms >= o.max_terms)
      raise(ErrorCode::MaxTermsExceeded,
            "Neumann series not converged after " + std::to_string(o.max_terms) + " terms");
    scale_spec(next.re, -1.0);
    scale_spec(next.im, -1.0);
    term = std::move(next);
    prev = nn;
  }
  if (!r.ratios.empty()) {
    double s = 0.0;
    for (double x : r.ratios) s += std::log(x);
    r.contraction = std::exp(s / static_cast<double>(r.ratios.size()));
  }
  return r;
}

}  // namespace

void axpy(ComplexField& a, double s, const ComplexField& b) {
  axpy_spec(a.re, s, b.re);
  axpy_spec(a.im, s, b.im);
}

void NeumannOptions::validate() const {
  require(tol > 0.0, "Neumann tolerance must be positive");
  require(max_terms >= 1, "max_terms must be >= 1");
  require(contraction_limit > 0.0, "contraction limit must be positive");
  require(patience >= 1, "patience must be >= 1");
}

ComplexField free_resolvent(const ModelParams& p, Complex lambda, const ComplexField& F, Exec ex) {
  ComplexField out = F;
  kernels::cns_resolvent_pair(p, lambda, out.re, out.im, ex);
  return out;
}

ComplexField free_resolvent(const DweParams& p, Complex lambda, const ComplexField& F, Exec ex) {
  ComplexField out = F;
  kernels::dwe_resolvent_pair(p, lambda, out.re, out.im, ex);
  return out;
}

NeumannReport perturbed_resolvent(const CnsPerturbation& B, Complex lambda, const ComplexField& F,
                                  const NeumannOptions& o, Exec ex) {
  return neumann(B, lambda, F, o, ex);
}

NeumannReport perturbed_resolvent(const DwePerturbation& B, Complex lambda, const ComplexField& F,
                                  const NeumannOptions& o, Exec ex) {
  return neumann(B, lambda, F, o, ex);
}

NeumannReport perturbed_resolvent(const ModelParams& p, const SyntheticProfile& prof, const CutoffSpec& cutoff,
                                  Complex lambda, const Field& F, const NeumannOptions& o) {
  require(F.components == p.n + 1, "CNS data needs n + 1 components");
  const CnsPerturbation B(p, prof, PressureLaw{}, cutoff);
  SpectralField fs = to_spectral(F);
  drop_nyquist(fs);
  return perturbed_resolvent(B, lambda, ComplexField(fs), o);
}

template <class Op, class Params>
ComplexField shifted(const Op& B, const Params& p, Complex lambda, const ComplexField& G, Exec ex) {
  ComplexField out = times_lambda(lambda, G);
  axpy_spec(out.re, 1.0, apply_symbol(p, G.re));
  axpy_spec(out.im, 1.0, apply_symbol(p, G.im));
  axpy(out, 1.0, apply_B(B, G, ex));
  return out;
}

ComplexField shifted_operator(const CnsPerturbation& B, Complex lambda, const ComplexField& G, Exec ex) {
  return shifted(B, B.params(), lambda, G, ex);
}

ComplexField shifted_operator(const DwePerturbation& B, Complex lambda, const ComplexField& G, Exec ex) {
  return shifted(B, B.params(), lambda, G, ex);
}

namespace {

struct FieldSum {
  SpectralField value;
  int max_terms = 0;
  double max_contraction = 0.0;
};

// Conjugate node pairs contribute complex-conjugate terms, so only nodes with
// Im lambda >= 0 are evaluated and the strictly upper ones counted twice.
FieldSum field_contour_sum(const CnsPerturbation& B, const SpectralField& F, double t, const ContourSpec& spec,
                           const NeumannOptions& o, Exec ex) {
  FieldSum s;
  s.value = SpectralField(F.grid, F.components, F.support);
  const ComplexField data(F);
  for (const ContourNode& nd : contour_nodes(spec, t)) {
    const double im = nd.lambda.imag();
    if (im < -1e-14 * std::abs(nd.lambda)) continue;
    const double mult = im > 1e-14 * std::abs(nd.lambda) ? 2.0 : 1.0;
    const NeumannReport r = perturbed_resolvent(B, nd.lambda, data, o, ex);
    s.max_terms = std::max(s.max_terms, r.terms);
    s.max_contraction = std::max(s.max_contraction, r.contraction);
    const Complex c = mult * nd.weight * std::exp(nd.lambda * t) / (2.0 * kPi * kI);
    axpy_spec(s.value, c.real(), r.value.re);
    axpy_spec(s.value, -c.imag(), r.value.im);
  }
  return s;
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  SpectralField d = a;
  axpy_spec(d, -1.0, b);
  const double na = std::sqrt(spectral_l2_sq(a));
  return std::sqrt(spectral_l2_sq(d)) / std::max(na, std::numeric_limits<double>::min());
}

}  // namespace

FieldContourResult perturbed_semigroup_via_contour(const CnsPerturbation& B, const SpectralField& F, double t,
                                                   const ContourSpec& spec, const NeumannOptions& o, Exec ex) {
  spec.validate();
  require(t > 0.0, "time must be positive");
  require(F.grid == B.grid(), "data grid must match the perturbation grid");
  FieldContourResult r;
  ContourSpec s = spec;
  FieldSum prev = field_contour_sum(B, F, t, s, o, ex);
  for (int d = 1; d <= spec.max_doublings; ++d) {
    s = doubled(s);
    FieldSum cur = field_contour_sum(B, F, t, s, o, ex);
    r.last_change = rel_diff(cur.value, prev.value);
    r.doublings = d;
    r.nodes = 2 * s.nodes_per_branch + s.arc_nodes;
    r.max_neumann_terms = std::max(prev.max_terms, cur.max_terms);
    r.max_contraction = std::max(prev.max_contraction, cur.max_contraction);
    r.value = cur.value;
    if (r.last_change <= spec.tol) return r;
    prev = std::move(cur);
  }
  raise(ErrorCode::QuadratureNotConverged, "perturbed contour quadrature did not settle");
}

}  // namespace parspec
