#pragma once
// Sampling helpers for tests.

#include "parspec/grid.hpp"

#include <cmath>

namespace testfields {

template <class F>
parspec::Field sample(const parspec::Grid& g, F&& fn) {
  parspec::Field f(g, 1);
  std::size_t idx = 0;
  for (int i0 = 0; i0 < g.points[0]; ++i0)
    for (int i1 = 0; i1 < g.points[1]; ++i1)
      for (int i2 = 0; i2 < g.points[2]; ++i2, ++idx) {
        double x[3] = {0.0, 0.0, 0.0};
        const int ii[3] = {i0, i1, i2};
        for (int a = 0; a < g.dim; ++a) x[a] = g.coord(a, ii[a]);
        f.data[0][idx] = fn(x);
      }
  return f;
}

inline double radius(const double* x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

inline parspec::Field gaussian(const parspec::Grid& g, double sigma, double shift = 0.0) {
  return sample(g, [&](const double* x) {
    const double r2 = (x[0] - shift) * (x[0] - shift) + x[1] * x[1] + x[2] * x[2];
    return std::exp(-0.5 * r2 / (sigma * sigma));
  });
}

}  // namespace testfields
