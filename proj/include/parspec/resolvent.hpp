#pragma once

#include "parspec/symbol.hpp"

namespace parspec {

// Distance below which lambda counts as an eigenvalue.
inline constexpr double kOnSpectrumTol = 1e-12;

// (lambda + A1(xi))^{-1} f through the closed formula. f = (f1, f2) with n+1 entries.
CVector cns_resolvent_apply(const ModelParams& p, Complex lambda, const FreqVector& xi, const CVector& f);

// Closed formula of the eliminated damped-wave system:
//   lambda u - v = f11,  (lambda^2 + mu|xi|^2 lambda + mu'|xi|^2) u = f12.
CVector dwe_resolvent_apply(const DweParams& p, Complex lambda, const FreqVector& xi, const CVector& f);

// (lambda + A(xi))^{-1} f for the first-order damped-wave symbol.
CVector dwe_first_order_resolvent(const DweParams& p, Complex lambda, const FreqVector& xi, const CVector& f);

// Unchecked per-mode variants used by grid kernels. xi has p.n entries.
// Handles xi = 0 and degenerate frequencies by a dense solve.
void cns_resolvent_mode(const ModelParams& p, Complex lambda, const double* xi, const Complex* f, Complex* out);
void dwe_first_order_resolvent_mode(const DweParams& p, Complex lambda, double xi_mag, const Complex* f,
                                    Complex* out);

}  // namespace parspec
