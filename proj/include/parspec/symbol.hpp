#pragma once

#include "parspec/types.hpp"

#include <optional>
#include <utility>

namespace parspec {

// Degeneracy tolerance on |xi| and on |lambda_+ - lambda_-|.
inline constexpr double kDegeneracyTol = 1e-9;

struct ModelParams {
  int n = 3;
  double alpha = 1.0;
  double beta = 4.0;
  double gamma = 1.0;

  void validate() const;
  double a() const { return alpha + beta; }
  // alpha + beta >= 5 gamma^2 and gamma >= 1
  bool strong_viscosity() const;
  // |xi| where lambda_+ = lambda_-
  double crossover() const { return 2.0 * gamma / (alpha + beta); }
};

struct DweParams {
  int n = 3;
  double mu = 5.0;
  double mu_prime = 1.0;

  void validate() const;
  bool strong_damping() const;
  double crossover() const;
};

enum class Regime { Oscillatory, Critical, RealSplit };
const char* regime_name(Regime r);

// Eigenvalues of -A(xi). lambda1 is absent for the damped wave system.
struct Spectrum {
  std::optional<Complex> lambda1;
  Complex lambda_plus;
  Complex lambda_minus;
  double discriminant = 0.0;
  Regime regime = Regime::Oscillatory;
  // half the root gap, (lambda_+ - lambda_-)/2
  Complex delta;
  double mean = 0.0;  // (lambda_+ + lambda_-)/2
};

struct Projections {
  CMatrix pi1;  // empty for the damped wave system
  CMatrix pi_plus;
  CMatrix pi_minus;
};

// ---- compressible Navier-Stokes linearization ----
CMatrix cns_symbol(const ModelParams& p, const FreqVector& xi);
Spectrum cns_spectrum(const ModelParams& p, double xi_mag);
bool cns_is_degenerate(const ModelParams& p, double xi_mag);
std::pair<Spectrum, Projections> cns_eigensystem(const ModelParams& p, const FreqVector& xi);
CMatrix cns_propagator(const ModelParams& p, const FreqVector& xi, double t);

// ---- damped wave equation, U = (u, u_t) ----
CMatrix dwe_symbol(const DweParams& p, const FreqVector& xi);
Spectrum dwe_spectrum(const DweParams& p, double xi_mag);
bool dwe_is_degenerate(const DweParams& p, double xi_mag);
std::pair<Spectrum, Projections> dwe_eigensystem(const DweParams& p, const FreqVector& xi);
CMatrix dwe_propagator(const DweParams& p, const FreqVector& xi, double t);

// Matrix exponential, degree-13 Pade with scaling and squaring.
CMatrix expm_pade(const CMatrix& a);

// Per-mode matrix functions. For f applied to -A(xi):
//   Exp : f(lambda) = exp(t lambda)
//   Phi1: f(lambda) = int_0^t exp(s lambda) ds
enum class ModeFunction { Exp, Phi1 };

Complex mode_scalar(ModeFunction kind, Complex lambda, double t);

// For a 2x2 block M with eigenvalues mean +- delta, f(M) = F0 I + F1 (M - mean I).
struct BlockCoeffs {
  Complex f0;
  Complex f1;
};
BlockCoeffs mode_block(ModeFunction kind, const Spectrum& s, double t);

// In-place application of f(-A(xi)) to one Fourier mode.
// CNS: u has n+1 entries (phi, w). DWE: u has 2 entries (u, v).
void cns_apply_mode(const ModelParams& p, const double* xi, ModeFunction kind, double t, Complex* u);
void dwe_apply_mode(const DweParams& p, double xi_mag, ModeFunction kind, double t, Complex* u);

}  // namespace parspec
