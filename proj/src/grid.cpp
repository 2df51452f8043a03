#include "parspec/grid.hpp"

#include "parspec/error.hpp"

#include <cmath>
#include <string>

namespace parspec {

namespace {
bool power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }
}  // namespace

Grid Grid::cubic(int dim, int n, double L) {
  Grid g;
  g.dim = dim;
  for (int a = 0; a < 3; ++a) {
    g.points[a] = a < dim ? n : 1;
    g.length[a] = a < dim ? L : 1.0;
  }
  g.validate();
  return g;
}

Grid Grid::box(int dim, std::array<int, 3> pts, std::array<double, 3> len) {
  Grid g;
  g.dim = dim;
  for (int a = 0; a < 3; ++a) {
    g.points[a] = a < dim ? pts[a] : 1;
    g.length[a] = a < dim ? len[a] : 1.0;
  }
  g.validate();
  return g;
}

void Grid::validate() const {
  require(dim >= 1 && dim <= 3, "grid dimension must be 1, 2 or 3");
  for (int a = 0; a < dim; ++a) {
    require(power_of_two(points[a]) && points[a] >= 2, "grid points per axis must be a power of two >= 2");
    require(length[a] > 0.0 && std::isfinite(length[a]), "box length must be positive");
  }
}

std::size_t Grid::size() const {
  return static_cast<std::size_t>(points[0]) * points[1] * points[2];
}

std::array<int, 3> Grid::spectral_shape() const {
  std::array<int, 3> s = points;
  s[dim - 1] = points[dim - 1] / 2 + 1;
  return s;
}

std::size_t Grid::spectral_size() const {
  const auto s = spectral_shape();
  return static_cast<std::size_t>(s[0]) * s[1] * s[2];
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= spacing(a);
  return v;
}

double Grid::volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= length[a];
  return v;
}

double Grid::nyquist() const {
  double m = INFINITY;
  for (int a = 0; a < dim; ++a) m = std::min(m, kPi * points[a] / length[a]);
  return m;
}

std::vector<double> Grid::wavenumbers(int axis) const {
  const auto shape = spectral_shape();
  std::vector<double> k(shape[axis], 0.0);
  if (axis >= dim) return k;
  const int n = points[axis];
  for (int i = 0; i < shape[axis]; ++i) {
    const int s = (axis == dim - 1 || i < n / 2) ? i : i - n;
    k[i] = dk(axis) * s;
  }
  return k;
}

Grid Grid::refined(int factor) const {
  Grid g = *this;
  for (int a = 0; a < dim; ++a) g.points[a] *= factor;
  g.validate();
  return g;
}

const char* support_name(Support s) {
  switch (s) {
    case Support::General: return "general";
    case Support::Low: return "low";
    case Support::High: return "high";
  }
  return "?";
}

Field::Field(const Grid& g, int comps, Support s) : grid(g), components(comps), support(s) {
  g.validate();
  require(comps >= 1, "field needs at least one component");
  data.assign(comps, RealArray(g.size(), 0.0));
}

SpectralField::SpectralField(const Grid& g, int comps, Support s) : grid(g), components(comps), support(s) {
  g.validate();
  require(comps >= 1, "field needs at least one component");
  data.assign(comps, ComplexArray(g.spectral_size(), Complex(0.0, 0.0)));
}

ModeTables::ModeTables(const Grid& g) {
  shape = g.spectral_shape();
  last_axis = g.dim - 1;
  for (int a = 0; a < 3; ++a) {
    k[a] = g.wavenumbers(a);
    nyq_index[a] = a < g.dim ? g.points[a] / 2 : -1;
  }
}

double ModeTables::weight(int i_last) const {
  if (i_last == 0 || i_last == nyq_index[last_axis]) return 1.0;
  return 2.0;
}

double spectral_l2_sq(const SpectralField& s) {
  const ModeTables t(s.grid);
  double acc = 0.0;
  for (int c = 0; c < s.components; ++c) {
    std::vector<double> part;
    std::size_t idx = 0;
    for (int i0 = 0; i0 < t.shape[0]; ++i0) {
      double row = 0.0;
      for (int i1 = 0; i1 < t.shape[1]; ++i1)
        for (int i2 = 0; i2 < t.shape[2]; ++i2, ++idx) {
          const int il = t.last_axis == 0 ? i0 : (t.last_axis == 1 ? i1 : i2);
          row += t.weight(il) * std::norm(s.data[c][idx]);
        }
      part.push_back(row);
    }
    for (double v : part) acc += v;
  }
  return acc * s.grid.cell_volume() / static_cast<double>(s.grid.size());
}

double physical_l2_sq(const Field& f) {
  double acc = 0.0;
  for (int c = 0; c < f.components; ++c)
    for (double v : f.data[c]) acc += v * v;
  return acc * f.grid.cell_volume();
}

}  // namespace parspec
