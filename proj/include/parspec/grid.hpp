#pragma once

#include "parspec/types.hpp"

#include <array>
#include <cstddef>
#include <cstdlib>
#include <new>
#include <vector>

namespace parspec {

template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::size_t kAlign = 64;
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) {}
  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t(kAlign)));
  }
  void deallocate(T* p, std::size_t) { ::operator delete(p, std::align_val_t(kAlign)); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const { return true; }
  template <class U>
  bool operator!=(const AlignedAllocator<U>&) const { return false; }
};

using RealArray = std::vector<double, AlignedAllocator<double>>;
using ComplexArray = std::vector<Complex, AlignedAllocator<Complex>>;

// Periodic box centred at the origin. Axes beyond dim have one point.
struct Grid {
  int dim = 3;
  std::array<int, 3> points{1, 1, 1};
  std::array<double, 3> length{1.0, 1.0, 1.0};

  static Grid cubic(int dim, int n, double L);
  static Grid box(int dim, std::array<int, 3> pts, std::array<double, 3> len);
  void validate() const;

  std::size_t size() const;
  // r2c layout: last active axis has N/2 + 1 entries
  std::array<int, 3> spectral_shape() const;
  std::size_t spectral_size() const;
  double spacing(int axis) const { return length[axis] / points[axis]; }
  double dk(int axis) const { return 2.0 * kPi / length[axis]; }
  double cell_volume() const;
  double volume() const;
  // smallest Nyquist frequency over active axes
  double nyquist() const;
  // physical coordinate of index i, box [-L/2, L/2)
  double coord(int axis, int i) const { return -0.5 * length[axis] + i * spacing(axis); }
  // signed wavenumbers along an axis in spectral index order
  std::vector<double> wavenumbers(int axis) const;
  Grid refined(int factor = 2) const;
  bool operator==(const Grid& o) const { return dim == o.dim && points == o.points && length == o.length; }
};

enum class Support { General, Low, High };
const char* support_name(Support s);

// Real physical-space field with one array per component.
struct Field {
  Grid grid;
  int components = 0;
  Support support = Support::General;
  std::vector<RealArray> data;

  Field() = default;
  Field(const Grid& g, int comps, Support s = Support::General);
  RealArray& operator[](int c) { return data[c]; }
  const RealArray& operator[](int c) const { return data[c]; }
};

// Half-spectrum of a real field, raw DFT coefficients (no volume factor).
struct SpectralField {
  Grid grid;
  int components = 0;
  Support support = Support::General;
  std::vector<ComplexArray> data;

  SpectralField() = default;
  SpectralField(const Grid& g, int comps, Support s = Support::General);
  ComplexArray& operator[](int c) { return data[c]; }
  const ComplexArray& operator[](int c) const { return data[c]; }
};

// Mode enumeration over the half spectrum. kvec is (k0, k1, k2); weight is the
// multiplicity in full-spectrum sums; nyquist flags any axis at index N/2.
struct ModeTables {
  std::array<std::vector<double>, 3> k;
  std::array<int, 3> shape;
  std::array<int, 3> nyq_index;
  int last_axis;
  explicit ModeTables(const Grid& g);
  double weight(int i_last) const;
};

template <class F>
void for_each_mode(const Grid& g, F&& f) {
  const ModeTables t(g);
  std::size_t idx = 0;
  for (int i0 = 0; i0 < t.shape[0]; ++i0)
    for (int i1 = 0; i1 < t.shape[1]; ++i1)
      for (int i2 = 0; i2 < t.shape[2]; ++i2, ++idx) {
        const double kv[3] = {t.k[0][i0], t.k[1][i1], t.k[2][i2]};
        const int il = t.last_axis == 0 ? i0 : (t.last_axis == 1 ? i1 : i2);
        const bool nyq = (g.dim > 0 && i0 == t.nyq_index[0]) || (g.dim > 1 && i1 == t.nyq_index[1]) ||
                         (g.dim > 2 && i2 == t.nyq_index[2]);
        f(idx, kv, t.weight(il), nyq);
      }
}

// Transforms. inverse() includes the 1/N normalization.
void fft_forward(const Grid& g, const double* in, Complex* out);
void fft_inverse(const Grid& g, const Complex* in, double* out);
SpectralField to_spectral(const Field& f);
Field to_physical(const SpectralField& s);

// Parseval: ||f||_{L2}^2 = (cell volume / N) sum_k weight |c_k|^2
double spectral_l2_sq(const SpectralField& s);
double physical_l2_sq(const Field& f);

}  // namespace parspec
