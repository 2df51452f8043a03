#include "parspec/decay_fit.hpp"

#include "parspec/error.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <nlohmann/json.hpp>

namespace parspec {

namespace {

constexpr int kMinSamples = 8;
// A power law fitted in log-log has R^2 ~ 1 and no curvature.
constexpr double kPowerLawR2 = 0.999;
constexpr double kPowerLawCurvature = 0.05;

struct Window {
  std::vector<double> x, y;
};

Window select(const Series& s, double lo, double hi, bool log_time) {
  require(lo <= hi, "fit window is reversed");
  Window w;
  for (const auto& [t, v] : s) {
    if (t < lo || t > hi) continue;
    require(v > 0.0 && std::isfinite(v), "fit values must be positive");
    w.x.push_back(log_time ? std::log1p(t) : t);
    w.y.push_back(std::log(v));
  }
  if (static_cast<int>(w.x.size()) < kMinSamples)
    raise(ErrorCode::WindowTooNarrow, "fit window holds fewer than 8 samples");
  return w;
}

struct Linear {
  double slope, intercept, r2, se;
};

Linear linear(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0.0, "fit abscissae are all equal");
  Linear l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  double sse = 0.0;
  for (int i = 0; i < n; ++i) sse += std::pow(y[i] - l.intercept - l.slope * x[i], 2);
  l.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  l.se = n > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
  return l;
}

double quadratic_coeff(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  const double x0 = x.front(), span = x.back() - x.front();
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const double u = span > 0 ? (x[i] - x0) / span : 0.0;
    a(i, 0) = 1.0;
    a(i, 1) = u;
    a(i, 2) = u * u;
    b(i) = y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return c(2);
}

DecayFit fit_loglog(const Window& w) {
  const Linear l = linear(w.x, w.y);
  DecayFit f;
  f.samples = static_cast<int>(w.x.size());
  f.exponent = l.slope;
  f.intercept = l.intercept;
  f.r2 = l.r2;
  f.stderr_exponent = l.se;
  // curvature relative to the total drop across the window
  const double drop = std::abs(l.slope) * (w.x.back() - w.x.front());
  f.curvature = drop > 0 ? std::abs(quadratic_coeff(w.x, w.y)) / drop : 0.0;
  f.power_law = f.r2 >= kPowerLawR2 && f.curvature <= kPowerLawCurvature;
  return f;
}

}  // namespace

DecayFit decay_fit(const Series& s, double t_lo, double t_hi) {
  DecayFit f = fit_loglog(select(s, t_lo, t_hi, true));
  f.t_lo = t_lo;
  f.t_hi = t_hi;
  return f;
}

DecayFit loglog_fit(const Series& s) {
  Window w;
  for (const auto& [x, v] : s) {
    require(x > 0.0 && v > 0.0, "log-log fit needs positive data");
    w.x.push_back(std::log(x));
    w.y.push_back(std::log(v));
  }
  require(w.x.size() >= 2, "log-log fit needs two points");
  const Linear l = linear(w.x, w.y);
  DecayFit f;
  f.samples = static_cast<int>(w.x.size());
  f.exponent = l.slope;
  f.intercept = l.intercept;
  f.r2 = l.r2;
  f.stderr_exponent = l.se;
  f.t_lo = s.front().first;
  f.t_hi = s.back().first;
  f.power_law = w.x.size() < 3 || f.r2 >= kPowerLawR2;
  return f;
}

ExpFit exponential_fit(const Series& s, double t_lo, double t_hi) {
  const Window w = select(s, t_lo, t_hi, false);
  const Linear l = linear(w.x, w.y);
  ExpFit f;
  f.t_lo = t_lo;
  f.t_hi = t_hi;
  f.samples = static_cast<int>(w.x.size());
  f.rate = -l.slope;
  f.intercept = l.intercept;
  f.r2 = l.r2;
  return f;
}

std::string to_json(const DecayFit& f) {
  nlohmann::ordered_json j;
  j["t_lo"] = f.t_lo;
  j["t_hi"] = f.t_hi;
  j["samples"] = f.samples;
  j["exponent"] = f.exponent;
  j["intercept"] = f.intercept;
  j["r2"] = f.r2;
  j["stderr_exponent"] = f.stderr_exponent;
  j["curvature"] = f.curvature;
  j["power_law"] = f.power_law;
  return j.dump(2);
}

std::string to_json(const ExpFit& f) {
  nlohmann::ordered_json j;
  j["t_lo"] = f.t_lo;
  j["t_hi"] = f.t_hi;
  j["samples"] = f.samples;
  j["rate"] = f.rate;
  j["intercept"] = f.intercept;
  j["r2"] = f.r2;
  return j.dump(2);
}

}  // namespace parspec
