#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace parspec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

// Frequency vector with cached Euclidean magnitude.
struct FreqVector {
  std::vector<double> xi;
  double magnitude = 0.0;

  FreqVector() = default;
  explicit FreqVector(std::vector<double> v);
  static FreqVector along_axis(int n, double mag, int axis = 0);
  int dim() const { return static_cast<int>(xi.size()); }
};

}  // namespace parspec
