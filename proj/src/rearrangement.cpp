#include "parspec/error.hpp"
#include "parspec/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace parspec {

RearrangementTable::RearrangementTable(std::vector<double> magnitudes, double cell_volume)
    : values_(std::move(magnitudes)), cell_(cell_volume) {
  require(cell_ > 0.0, "cell volume must be positive");
  for (double& v : values_) v = std::abs(v);
  std::sort(values_.begin(), values_.end(), std::greater<double>());
}

RearrangementTable RearrangementTable::of(const Field& f) {
  return RearrangementTable(magnitudes(f), f.grid.cell_volume());
}

double RearrangementTable::rearranged(double s) const {
  if (s < 0.0) return values_.empty() ? 0.0 : values_.front();
  const auto k = static_cast<std::size_t>(std::floor(s / cell_));
  return k < values_.size() ? values_[k] : 0.0;
}

double RearrangementTable::distribution(double lambda) const {
  // first entry that is not greater than lambda
  const auto it = std::lower_bound(values_.begin(), values_.end(), lambda, std::greater<double>());
  return static_cast<double>(it - values_.begin()) * cell_;
}

void LorentzExp::validate() const {
  require(p >= 1.0 && std::isfinite(p), "Lorentz exponent p must be in [1, inf)");
  require(q >= 1.0, "Lorentz exponent q must be >= 1");
}

double lorentz_norm(const RearrangementTable& t, const LorentzExp& e) {
  e.validate();
  const auto& v = t.values();
  const double dv = t.cell_volume();
  if (std::isinf(e.q)) {
    double m = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) m = std::max(m, v[k] * std::pow((k + 1) * dv, 1.0 / e.p));
    return m;
  }
  // exact integral of (s^{1/p} f*)^q ds / s over each step
  const double r = e.q / e.p;
  double total = 0.0, prev = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0.0) break;
    const double next = std::pow((k + 1) * dv, r);
    total += std::pow(v[k], e.q) * (next - prev);
    prev = next;
  }
  return std::pow(total / r, 1.0 / e.q);
}

double lorentz_norm(const Field& f, const LorentzExp& e) { return lorentz_norm(RearrangementTable::of(f), e); }

std::vector<double> magnitudes(const Field& f) {
  const std::size_t n = f.grid.size();
  std::vector<double> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (f.components == 1) {
      m[i] = std::abs(f.data[0][i]);
    } else {
      double s = 0.0;
      for (int c = 0; c < f.components; ++c) s += f.data[c][i] * f.data[c][i];
      m[i] = std::sqrt(s);
    }
  }
  return m;
}

}  // namespace parspec
