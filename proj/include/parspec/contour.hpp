#pragma once

#include "parspec/symbol.hpp"

#include <functional>
#include <string>
#include <vector>

namespace parspec {

enum class Quadrature { Trapezoid, Midpoint };
const char* quadrature_name(Quadrature q);

// Gamma = Gamma_- u Gamma_0 u Gamma_+ with
//   Gamma_pm: lambda(r) = -r^2 pm (r + 1/t) i,  0 < r <= r_max
//   Gamma_0:  lambda = e^{i theta} / t,          -pi/2 <= theta <= pi/2
// traversed upward. Each piece is integrated with the trapezoid or midpoint
// rule after a double-exponential change of variable.
struct ContourSpec {
  double t = 1.0;             // contour parameter, arc radius 1/t
  double r_max = 0.0;         // 0 means 6 / sqrt(time)
  int nodes_per_branch = 96;
  int arc_nodes = 33;
  Quadrature quadrature = Quadrature::Trapezoid;
  double tol = 1e-6;          // doubling convergence target
  int max_doublings = 6;

  void validate() const;
  // r_max actually used at physical time `time`
  double branch_length(double time) const;
};

// Node counts after one doubling step (2m - 1 for the trapezoid rule so the
// old nodes are reused, 2m for the midpoint rule).
ContourSpec doubled(const ContourSpec& s);

struct ContourNode {
  Complex lambda;
  Complex weight;  // d lambda including quadrature weight and orientation
  int piece;       // -1 lower branch, 0 arc, +1 upper branch
};

// Nodes ordered along the contour. `time` sets the truncation check
// Re lambda(r_max) * time <= -36; pass 0 to use spec.t.
std::vector<ContourNode> contour_nodes(const ContourSpec& spec, double time = 0.0);

// Tangent of the branches, d lambda / dr = -2r pm i.
inline Complex branch_tangent(double r, int sign) { return Complex(-2.0 * r, sign); }

enum class SystemKind { CNS, DWE };
const char* system_name(SystemKind s);

struct ContourResult {
  CMatrix value;
  int nodes = 0;
  int doublings = 0;
  double last_change = 0.0;
};

// (1 / 2 pi i) sum_k w_k e^{lambda_k t} (lambda_k + A(xi))^{-1}, doubling the
// node counts until successive results agree to spec.tol.
ContourResult semigroup_via_contour(const ModelParams& p, const FreqVector& xi, double t, const ContourSpec& spec);
ContourResult semigroup_via_contour(const DweParams& p, const FreqVector& xi, double t, const ContourSpec& spec);

// Single evaluation at the given node counts, no doubling.
CMatrix contour_sum(const ModelParams& p, const FreqVector& xi, double t, const ContourSpec& spec);
CMatrix contour_sum(const DweParams& p, const FreqVector& xi, double t, const ContourSpec& spec);

// Generic vector-valued version: apply(lambda) returns the resolvent applied
// to fixed data as a flat complex vector.
std::vector<Complex> contour_sum(const std::function<std::vector<Complex>(Complex)>& apply,
                                 const std::vector<ContourNode>& nodes, double t);

// Relative error of the contour value against the spectral propagator for a
// sequence of node doublings starting from spec's counts.
struct ConvergenceStudy {
  std::vector<int> nodes;
  std::vector<double> errors;
  // smallest err_k / err_{k+1} among steps whose coarse error exceeds floor
  double min_factor = 0.0;
  // requested floor raised to the rounding level of the cancelling sum
  double floor = 0.0;
};

ConvergenceStudy contour_convergence(const ModelParams& p, const FreqVector& xi, double t, ContourSpec spec,
                                     int levels, double floor = 1e-10);

// min distance between the nodes and {lambda_+(xi), lambda_-(xi), lambda_1(xi)} over xi_mags
double contour_margin(const ModelParams& p, const ContourSpec& spec, const std::vector<double>& xi_mags,
                      double time = 0.0);

std::string contour_csv(const std::vector<ContourNode>& nodes);

}  // namespace parspec
