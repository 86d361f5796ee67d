// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "oscmult/fft.hpp"
#include "oscmult/simd.hpp"

namespace oscmult {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

UniformGrid::UniformGrid(std::initializer_list<Axis> axes)
    : UniformGrid(std::vector<Axis>(axes)) {}

UniformGrid::UniformGrid(const std::vector<Axis>& axes) : dim_(static_cast<int>(axes.size())) {
  if (axes.empty() || axes.size() > 3)
    throw std::invalid_argument("grid dimension must be 1, 2 or 3");
  for (std::size_t a = 0; a < axes.size(); ++a) ax_[a] = axes[a];
  validate();
}

void UniformGrid::validate() const {
  for (int a = 0; a < dim_; ++a) {
    const Axis& ax = ax_[static_cast<std::size_t>(a)];
    if (!(ax.extent > 0.0)) throw std::invalid_argument("grid extent must be positive");
    if (ax.n < 16 || !is_pow2(ax.n))
      throw std::invalid_argument("grid point count must be a power of two >= 16");
  }
}

UniformGrid UniformGrid::line(double extent, std::size_t n) { return UniformGrid{{extent, n}}; }
UniformGrid UniformGrid::square(double extent, std::size_t n) {
  return UniformGrid{{extent, n}, {extent, n}};
}
UniformGrid UniformGrid::cube(double extent, std::size_t n) {
  return UniformGrid{{extent, n}, {extent, n}, {extent, n}};
}

std::size_t UniformGrid::size() const {
  std::size_t s = 1;
  for (int a = 0; a < dim_; ++a) s *= axis(a).n;
  return s;
}

double UniformGrid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= spacing(a);
  return v;
}

UniformGrid UniformGrid::frequency_grid() const {
  std::vector<Axis> axes;
  for (int a = 0; a < dim_; ++a)
    axes.push_back({kPi * static_cast<double>(axis(a).n) / (2.0 * axis(a).extent), axis(a).n});
  return UniformGrid(axes);
}

bool UniformGrid::same_shape(const UniformGrid& o, double tol) const {
  if (dim_ != o.dim_) return false;
  for (int a = 0; a < dim_; ++a) {
    if (axis(a).n != o.axis(a).n) return false;
    if (std::fabs(axis(a).extent - o.axis(a).extent) > tol * axis(a).extent) return false;
  }
  return true;
}

SampledFunction::SampledFunction(const UniformGrid& grid) : grid_(grid), v_(grid.size()) {}

SampledFunction::SampledFunction(const UniformGrid& grid, std::vector<cdouble> values)
    : grid_(grid), v_(std::move(values)) {
  if (v_.size() != grid_.size())
    throw std::invalid_argument("value count does not match grid size");
}

SampledFunction SampledFunction::sample(
    const UniformGrid& grid, const std::function<cdouble(double, double, double)>& fn) {
  SampledFunction f(grid);
  const int d = grid.dim();
  const std::size_t n0 = grid.axis(0).n;
  const std::size_t n1 = d > 1 ? grid.axis(1).n : 1;
  const std::size_t n2 = d > 2 ? grid.axis(2).n : 1;
  std::size_t idx = 0;
  for (std::size_t i2 = 0; i2 < n2; ++i2) {
    const double x2 = d > 2 ? grid.coord(2, i2) : 0.0;
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      const double x1 = d > 1 ? grid.coord(1, i1) : 0.0;
      for (std::size_t i0 = 0; i0 < n0; ++i0, ++idx)
        f.v_[idx] = fn(grid.coord(0, i0), x1, x2);
    }
  }
  return f;
}

std::size_t SampledFunction::flat(std::size_t i0, std::size_t i1, std::size_t i2) const {
  const std::size_t n0 = grid_.axis(0).n;
  const std::size_t n1 = grid_.dim() > 1 ? grid_.axis(1).n : 1;
  return i0 + n0 * (i1 + n1 * i2);
}

cdouble& SampledFunction::at(std::size_t i0, std::size_t i1, std::size_t i2) {
  return v_[flat(i0, i1, i2)];
}
const cdouble& SampledFunction::at(std::size_t i0, std::size_t i1, std::size_t i2) const {
  return v_[flat(i0, i1, i2)];
}

double SampledFunction::l1() const {
  return grid_.cell_volume() * simd::active().reduce_abs(v_.data(), v_.size());
}

double SampledFunction::l2() const {
  return std::sqrt(grid_.cell_volume() * simd::active().reduce_abs2(v_.data(), v_.size()));
}

double SampledFunction::max_abs() const {
  return simd::active().reduce_max_abs(v_.data(), v_.size());
}

cdouble SampledFunction::integral() const {
  cdouble acc = 0.0;
  for (const cdouble& z : v_) acc += z;
  return grid_.cell_volume() * acc;
}

namespace {

// (-1)^(i0+i1+i2) recentres the transform: grids cover [-R, R) while the DFT
// works on [0, N).
void checkerboard(std::vector<cdouble>& v, const UniformGrid& g) {
  const int d = g.dim();
  const std::size_t n0 = g.axis(0).n;
  const std::size_t n1 = d > 1 ? g.axis(1).n : 1;
  const std::size_t n2 = d > 2 ? g.axis(2).n : 1;
  std::size_t idx = 0;
  for (std::size_t i2 = 0; i2 < n2; ++i2)
    for (std::size_t i1 = 0; i1 < n1; ++i1)
      for (std::size_t i0 = 0; i0 < n0; ++i0, ++idx)
        if ((i0 + i1 + i2) & 1) v[idx] = -v[idx];
}

SampledFunction transform(const SampledFunction& f, bool inverse) {
  const UniformGrid& g = f.grid();
  std::vector<cdouble> v = f.values();
  checkerboard(v, g);
  double scale = 1.0;
  std::size_t stride = 1;
  for (int a = 0; a < g.dim(); ++a) {
    const std::size_t len = g.axis(a).n;
    fft_axis(v.data(), v.size(), len, stride, inverse);
    stride *= len;
    scale *= g.spacing(a) / std::sqrt(2.0 * kPi);
  }
  checkerboard(v, g);
  for (cdouble& z : v) z *= scale;
  return SampledFunction(g.frequency_grid(), std::move(v));
}

}  // namespace

SampledFunction fourier(const SampledFunction& f) { return transform(f, false); }
SampledFunction inverse_fourier(const SampledFunction& f) { return transform(f, true); }

}  // namespace oscmult
