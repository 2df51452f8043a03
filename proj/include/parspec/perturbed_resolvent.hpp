#pragma once

#include "parspec/contour.hpp"
#include "parspec/perturbation.hpp"

#include <vector>

namespace parspec {

// Complex-valued field re + i im; both parts are spectra of real fields.
struct ComplexField {
  SpectralField re;
  SpectralField im;

  ComplexField() = default;
  explicit ComplexField(const SpectralField& real_part);
  ComplexField(const Grid& g, int comps);
};

double l2_norm(const ComplexField& f);
// a += s b
void axpy(ComplexField& a, double s, const ComplexField& b);

struct NeumannOptions {
  double tol = 1e-10;
  int max_terms = 200;
  double contraction_limit = 0.95;
  int patience = 3;  // consecutive ratios above the limit before NoContraction
  void validate() const;
};

struct NeumannReport {
  ComplexField value;
  int terms = 0;
  std::vector<double> term_norms;
  std::vector<double> ratios;  // ||term_{j+1}|| / ||term_j||
  double contraction = 0.0;    // geometric mean of the ratios, 0 for a single term
};

// (lambda + A + B)^{-1} F = sum_j (-(lambda + A)^{-1} B)^j (lambda + A)^{-1} F.
// Stops once the latest term is <= tol times the running sum.
NeumannReport perturbed_resolvent(const CnsPerturbation& B, Complex lambda, const ComplexField& F,
                                  const NeumannOptions& o = {}, Exec ex = default_exec());
NeumannReport perturbed_resolvent(const DwePerturbation& B, Complex lambda, const ComplexField& F,
                                  const NeumannOptions& o = {}, Exec ex = default_exec());

// Real data convenience form, B_1 = P_1 B built from the profile and cutoff.
NeumannReport perturbed_resolvent(const ModelParams& p, const SyntheticProfile& prof, const CutoffSpec& cutoff,
                                  Complex lambda, const Field& F, const NeumannOptions& o = {});

// Unperturbed pieces, exposed for residual checks.
ComplexField free_resolvent(const ModelParams& p, Complex lambda, const ComplexField& F, Exec ex = default_exec());
ComplexField free_resolvent(const DweParams& p, Complex lambda, const ComplexField& F, Exec ex = default_exec());
// (lambda + A + B) G
ComplexField shifted_operator(const CnsPerturbation& B, Complex lambda, const ComplexField& G,
                              Exec ex = default_exec());
ComplexField shifted_operator(const DwePerturbation& B, Complex lambda, const ComplexField& G,
                              Exec ex = default_exec());

struct FieldContourResult {
  SpectralField value;
  int nodes = 0;
  int doublings = 0;
  double last_change = 0.0;
  int max_neumann_terms = 0;
  double max_contraction = 0.0;
};

// e^{-t(A + B)} F via the Cauchy integral with perturbed resolvents,
// doubling node counts until successive results agree to spec.tol.
FieldContourResult perturbed_semigroup_via_contour(const CnsPerturbation& B, const SpectralField& F, double t,
                                                   const ContourSpec& spec, const NeumannOptions& o = {},
                                                   Exec ex = default_exec());

}  // namespace parspec
