#include "parspec/cutoff.hpp"

#include "parspec/error.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace parspec {

namespace {

double bump(double s) {
  const double q = 1.0 - s * s;
  return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
}

// Step values on [0, 1/2] at 4096 intervals with exact derivatives; the rest by symmetry.
struct StepTable {
  static constexpr int kN = 4096;
  std::vector<double> val, der;
  StepTable() : val(kN / 2 + 1), der(kN / 2 + 1) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double z = ts.integrate(bump, -1.0, 1.0);
    for (int i = 0; i <= kN / 2; ++i) {
      const double t = static_cast<double>(i) / kN;
      const double x = 2.0 * t - 1.0;
      val[i] = x <= -1.0 ? 0.0 : ts.integrate(bump, -1.0, x) / z;
      der[i] = 2.0 * bump(x) / z;
    }
    val[kN / 2] = 0.5;
  }
  double eval_half(double t) const {
    // cubic Hermite on [0, 1/2]
    const double u = t * kN;
    int i = static_cast<int>(u);
    if (i >= kN / 2) i = kN / 2 - 1;
    const double h = 1.0 / kN;
    const double s = u - i;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * val[i] + h10 * h * der[i] + h01 * val[i + 1] + h11 * h * der[i + 1];
  }
};

const StepTable& table() {
  static const StepTable t;
  return t;
}

}  // namespace

void CutoffSpec::validate() const {
  require(r1p > 0.0 && rinfp > r1p, "cutoff radii must satisfy 0 < r1' < rinf'");
  require(mollifier_width >= 0.0, "mollifier width must be non-negative");
}

double CutoffSpec::width() const {
  const double full = rinfp - r1p;
  return mollifier_width > 0.0 ? std::min(mollifier_width, full) : full;
}

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (t <= 0.5) return table().eval_half(t);
  return 1.0 - table().eval_half(1.0 - t);
}

double chi_low(const CutoffSpec& c, const double* xi, int dim) {
  double g = 0.0;
  for (int a = 0; a < dim; ++a) g = std::max(g, std::abs(xi[a]));
  if (g <= c.r1p) return 1.0;
  const double w = c.width();
  return 1.0 - smooth_step((g - c.r1p) / w);
}

double lp_rho(double r) { return 1.0 - smooth_step((r - 0.75) / (4.0 / 3.0 - 0.75)); }

double lp_phi(double r) { return lp_rho(0.5 * r) - lp_rho(r); }

}  // namespace parspec
