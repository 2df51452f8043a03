#include "parspec/contour.hpp"

#include "parspec/error.hpp"
#include "parspec/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace parspec {

namespace {

constexpr double kEndDamping = -36.0;
constexpr double kTanhSinhSpan = 3.0;

// Abscissae u and weights h*phi'(u) of the double-exponential rule on [0, 1].
void de_rule(int m, Quadrature q, std::vector<double>& x, std::vector<double>& w) {
  x.resize(m);
  w.resize(m);
  const double U = kTanhSinhSpan;
  const double h = q == Quadrature::Trapezoid ? 2.0 * U / (m - 1) : 2.0 * U / m;
  for (int k = 0; k < m; ++k) {
    const double u = q == Quadrature::Trapezoid ? -U + k * h : -U + (k + 0.5) * h;
    const double s = 0.5 * kPi * std::sinh(u);
    const double ch = std::cosh(s);
    x[k] = 0.5 * (1.0 + std::tanh(s));
    double wk = 0.5 * h * 0.5 * kPi * std::cosh(u) / (ch * ch);
    if (q == Quadrature::Trapezoid && (k == 0 || k == m - 1)) wk *= 0.5;
    w[k] = wk;
  }
}

Complex expo(Complex lambda, double t) { return std::exp(lambda * t); }

template <class Resolve>
CMatrix contour_matrix(int dim, const std::vector<ContourNode>& nodes, double t, Resolve&& resolve) {
  CMatrix acc = CMatrix::Zero(dim, dim);
  std::vector<Complex> col(dim), e(dim);
  for (const ContourNode& nd : nodes) {
    const Complex c = nd.weight * expo(nd.lambda, t);
    for (int j = 0; j < dim; ++j) {
      std::fill(e.begin(), e.end(), Complex(0.0));
      e[j] = 1.0;
      resolve(nd.lambda, e.data(), col.data());
      for (int i = 0; i < dim; ++i) acc(i, j) += c * col[i];
    }
  }
  return acc / (2.0 * kPi * kI);
}

double rel_change(const CMatrix& a, const CMatrix& b) {
  const double s = std::max(a.norm(), std::numeric_limits<double>::min());
  return (a - b).norm() / s;
}

template <class Sum>
ContourResult with_doubling(const ContourSpec& spec, Sum&& sum) {
  spec.validate();
  ContourResult r;
  ContourSpec s = spec;
  CMatrix prev = sum(s);
  for (int d = 1; d <= spec.max_doublings; ++d) {
    s = doubled(s);
    CMatrix cur = sum(s);
    const double ch = rel_change(cur, prev);
    r.value = cur;
    r.doublings = d;
    r.last_change = ch;
    r.nodes = 2 * s.nodes_per_branch + s.arc_nodes;
    if (ch <= spec.tol) return r;
    prev = std::move(cur);
  }
  raise(ErrorCode::QuadratureNotConverged,
        "contour quadrature did not settle after " + std::to_string(spec.max_doublings) + " doublings");
}

}  // namespace

ContourSpec doubled(const ContourSpec& s) {
  ContourSpec d = s;
  if (s.quadrature == Quadrature::Trapezoid) {
    d.nodes_per_branch = 2 * s.nodes_per_branch - 1;
    d.arc_nodes = 2 * s.arc_nodes - 1;
  } else {
    d.nodes_per_branch = 2 * s.nodes_per_branch;
    d.arc_nodes = 2 * s.arc_nodes;
  }
  return d;
}

const char* quadrature_name(Quadrature q) { return q == Quadrature::Trapezoid ? "trapezoid" : "midpoint"; }
const char* system_name(SystemKind s) { return s == SystemKind::CNS ? "cns" : "dwe"; }

void ContourSpec::validate() const {
  require(t > 0.0 && std::isfinite(t), "contour parameter t must be positive");
  require(r_max >= 0.0, "r_max must be nonnegative");
  require(nodes_per_branch >= 2 && arc_nodes >= 2, "need at least two nodes per contour piece");
  require(tol > 0.0 && max_doublings >= 0, "bad doubling controls");
}

double ContourSpec::branch_length(double time) const {
  const double tm = time > 0.0 ? time : t;
  return r_max > 0.0 ? r_max : 6.0 / std::sqrt(tm);
}

std::vector<ContourNode> contour_nodes(const ContourSpec& spec, double time) {
  spec.validate();
  const double tm = time > 0.0 ? time : spec.t;
  const double R = spec.branch_length(tm);
  if (-R * R * tm > kEndDamping + 1e-12)
    raise(ErrorCode::TruncationTooSmall, "branch truncation leaves |e^{lambda t}| above e^-36 at the endpoint");
  const double inv_t = 1.0 / spec.t;
  std::vector<double> x, w;
  std::vector<ContourNode> nodes;
  nodes.reserve(2 * spec.nodes_per_branch + spec.arc_nodes);

  de_rule(spec.nodes_per_branch, spec.quadrature, x, w);
  // lower branch, inward: r runs from R down to 0
  for (int k = spec.nodes_per_branch - 1; k >= 0; --k) {
    const double r = R * x[k];
    const Complex lam(-r * r, -(r + inv_t));
    nodes.push_back({lam, -branch_tangent(r, -1) * (R * w[k]), -1});
  }
  std::vector<double> xa, wa;
  de_rule(spec.arc_nodes, spec.quadrature, xa, wa);
  for (int k = 0; k < spec.arc_nodes; ++k) {
    const double th = -0.5 * kPi + kPi * xa[k];
    const Complex e = std::polar(inv_t, th);
    nodes.push_back({e, kI * e * (kPi * wa[k]), 0});
  }
  for (int k = 0; k < spec.nodes_per_branch; ++k) {
    const double r = R * x[k];
    const Complex lam(-r * r, r + inv_t);
    nodes.push_back({lam, branch_tangent(r, +1) * (R * w[k]), +1});
  }
  return nodes;
}

CMatrix contour_sum(const ModelParams& p, const FreqVector& xi, double t, const ContourSpec& spec) {
  const auto nodes = contour_nodes(spec, t);
  return contour_matrix(p.n + 1, nodes, t, [&](Complex lam, const Complex* f, Complex* out) {
    cns_resolvent_mode(p, lam, xi.xi.data(), f, out);
  });
}

CMatrix contour_sum(const DweParams& p, const FreqVector& xi, double t, const ContourSpec& spec) {
  const auto nodes = contour_nodes(spec, t);
  return contour_matrix(2, nodes, t, [&](Complex lam, const Complex* f, Complex* out) {
    dwe_first_order_resolvent_mode(p, lam, xi.magnitude, f, out);
  });
}

ContourResult semigroup_via_contour(const ModelParams& p, const FreqVector& xi, double t, const ContourSpec& spec) {
  p.validate();
  require(xi.dim() == p.n, "frequency dimension must match n");
  require(t > 0.0, "time must be positive");
  return with_doubling(spec, [&](const ContourSpec& s) { return contour_sum(p, xi, t, s); });
}

ContourResult semigroup_via_contour(const DweParams& p, const FreqVector& xi, double t, const ContourSpec& spec) {
  p.validate();
  require(t > 0.0, "time must be positive");
  return with_doubling(spec, [&](const ContourSpec& s) { return contour_sum(p, xi, t, s); });
}

std::vector<Complex> contour_sum(const std::function<std::vector<Complex>(Complex)>& apply,
                                 const std::vector<ContourNode>& nodes, double t) {
  std::vector<Complex> acc;
  for (const ContourNode& nd : nodes) {
    const std::vector<Complex> v = apply(nd.lambda);
    if (acc.empty()) acc.assign(v.size(), Complex(0.0));
    const Complex c = nd.weight * expo(nd.lambda, t) / (2.0 * kPi * kI);
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += c * v[i];
  }
  return acc;
}

ConvergenceStudy contour_convergence(const ModelParams& p, const FreqVector& xi, double t, ContourSpec spec,
                                     int levels, double floor) {
  ConvergenceStudy st;
  const CMatrix exact = cns_propagator(p, xi, t);
  // Rounding floor: the sum cancels from sum |w e^{lambda t}| ||R|| down to ||S||.
  {
    double mass = 0.0;
    std::vector<Complex> e(p.n + 1), col(p.n + 1);
    for (const ContourNode& nd : contour_nodes(spec, t)) {
      double rn = 0.0;
      for (int j = 0; j <= p.n; ++j) {
        std::fill(e.begin(), e.end(), Complex(0.0));
        e[j] = 1.0;
        cns_resolvent_mode(p, nd.lambda, xi.xi.data(), e.data(), col.data());
        for (const Complex& c : col) rn += std::norm(c);
      }
      mass += std::abs(nd.weight * expo(nd.lambda, t)) * std::sqrt(rn);
    }
    const double cancel = mass / (2.0 * kPi * std::max(exact.norm(), std::numeric_limits<double>::min()));
    st.floor = std::max(floor, 1e3 * std::numeric_limits<double>::epsilon() * cancel);
  }
  for (int l = 0; l < levels; ++l) {
    const CMatrix v = contour_sum(p, xi, t, spec);
    st.nodes.push_back(2 * spec.nodes_per_branch + spec.arc_nodes);
    st.errors.push_back(rel_change(exact, v));
    spec = doubled(spec);
  }
  st.min_factor = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < st.errors.size(); ++k) {
    if (st.errors[k] <= st.floor) break;
    st.min_factor = std::min(st.min_factor, st.errors[k] / std::max(st.errors[k + 1], 1e-300));
  }
  return st;
}

double contour_margin(const ModelParams& p, const ContourSpec& spec, const std::vector<double>& xi_mags,
                      double time) {
  const auto nodes = contour_nodes(spec, time);
  double m = std::numeric_limits<double>::infinity();
  for (double x : xi_mags) {
    const Spectrum s = cns_spectrum(p, x);
    for (const ContourNode& nd : nodes) {
      m = std::min({m, std::abs(nd.lambda - s.lambda_plus), std::abs(nd.lambda - s.lambda_minus)});
      if (s.lambda1) m = std::min(m, std::abs(nd.lambda - *s.lambda1));
    }
  }
  return m;
}

std::string contour_csv(const std::vector<ContourNode>& nodes) {
  std::ostringstream os;
  os.precision(17);
  os << "piece,re_lambda,im_lambda,re_weight,im_weight\n";
  for (const auto& n : nodes)
    os << n.piece << ',' << n.lambda.real() << ',' << n.lambda.imag() << ',' << n.weight.real() << ','
       << n.weight.imag() << '\n';
  return os.str();
}

}  // namespace parspec
