// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace oscmult {

using cdouble = std::complex<double>;

struct Axis {
  double extent = 0.0;  // points cover [-extent, extent)
  std::size_t n = 0;    // power of two, >= 16
};

// Centered uniform tensor grid, axis a sampling x_i = -R_a + i * h_a with
// h_a = 2 R_a / n_a. Axis 0 varies fastest in flat storage.
class UniformGrid {
 public:
  UniformGrid(std::initializer_list<Axis> axes);
  explicit UniformGrid(const std::vector<Axis>& axes);
  static UniformGrid line(double extent, std::size_t n);
  static UniformGrid square(double extent, std::size_t n);
  static UniformGrid cube(double extent, std::size_t n);

  int dim() const { return dim_; }
  const Axis& axis(int a) const { return ax_[static_cast<std::size_t>(a)]; }
  double spacing(int a) const { return 2.0 * axis(a).extent / static_cast<double>(axis(a).n); }
  double coord(int a, std::size_t i) const { return -axis(a).extent + spacing(a) * static_cast<double>(i); }
  std::size_t size() const;
  double cell_volume() const;

  // conjugate grid: extent pi*n/(2R) per axis, same point counts
  UniformGrid frequency_grid() const;

  bool same_shape(const UniformGrid& o, double tol = 1e-9) const;

 private:
  int dim_;
  std::array<Axis, 3> ax_{};
  void validate() const;
};

class SampledFunction {
 public:
  explicit SampledFunction(const UniformGrid& grid);
  SampledFunction(const UniformGrid& grid, std::vector<cdouble> values);

  // fn receives the coordinate tuple (padded with zeros above dim)
  static SampledFunction sample(const UniformGrid& grid,
                                const std::function<cdouble(double, double, double)>& fn);

  const UniformGrid& grid() const { return grid_; }
  const std::vector<cdouble>& values() const { return v_; }
  std::vector<cdouble>& values() { return v_; }

  std::size_t flat(std::size_t i0, std::size_t i1 = 0, std::size_t i2 = 0) const;
  cdouble& at(std::size_t i0, std::size_t i1 = 0, std::size_t i2 = 0);
  const cdouble& at(std::size_t i0, std::size_t i1 = 0, std::size_t i2 = 0) const;

  double l1() const;        // cell_volume * sum |v|
  double l2() const;        // sqrt(cell_volume * sum |v|^2)
  double max_abs() const;
  cdouble integral() const;  // cell_volume * sum v

 private:
  UniformGrid grid_;
  std::vector<cdouble> v_;
};

// Unitary continuum-convention Fourier transform pair:
//   fourier(f)(xi) ~ (2pi)^{-d/2} int f(x) e^{-i xi.x} dx
// realized exactly on the grid so that inverse_fourier(fourier(f)) == f and
// the L2 norms of f and fourier(f) agree to rounding.
SampledFunction fourier(const SampledFunction& f);
SampledFunction inverse_fourier(const SampledFunction& f);

}  // namespace oscmult
