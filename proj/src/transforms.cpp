// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/transforms.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "oscmult/simd.hpp"

namespace oscmult {

namespace {

// Applies fn(row_pointer, weight_buffer, n0) for every axis-0 line, with the
// weight buffer filled from wfn(x0, x1, x2).
template <class WeightFn, class RowFn>
void for_each_row(const SampledFunction& f, WeightFn&& wfn, RowFn&& fn) {
  const UniformGrid& g = f.grid();
  const int d = g.dim();
  const std::size_t n0 = g.axis(0).n;
  const std::size_t n1 = d > 1 ? g.axis(1).n : 1;
  const std::size_t n2 = d > 2 ? g.axis(2).n : 1;
  std::vector<double> wbuf(n0);
  std::size_t row = 0;
  for (std::size_t i2 = 0; i2 < n2; ++i2) {
    const double x2 = d > 2 ? g.coord(2, i2) : 0.0;
    for (std::size_t i1 = 0; i1 < n1; ++i1, ++row) {
      const double x1 = d > 1 ? g.coord(1, i1) : 0.0;
      for (std::size_t i0 = 0; i0 < n0; ++i0) wbuf[i0] = wfn(g.coord(0, i0), x1, x2);
      fn(f.values().data() + row * n0, wbuf.data(), n0);
    }
  }
}

}  // namespace

double point_norm(AmbientNorm norm, double x, double y, double z, int dim) {
  if (norm == AmbientNorm::koranyi) {
    if (dim != 3) throw std::invalid_argument("koranyi norm needs a 3d grid");
    const double r2 = x * x + y * y;
    return std::pow(r2 * r2 + 16.0 * z * z, 0.25);
  }
  double s = x * x;
  if (dim > 1) s += y * y;
  if (dim > 2) s += z * z;
  return std::sqrt(s);
}

double sobolev_norm(const SampledFunction& f, double s) {
  const UniformGrid& g = f.grid();
  const double cut = 1e-13 * f.max_abs();
  const int d = g.dim();
  const std::size_t n0 = g.axis(0).n;
  const std::size_t n1 = d > 1 ? g.axis(1).n : 1;
  const std::size_t n2 = d > 2 ? g.axis(2).n : 1;
  std::size_t idx = 0;
  for (std::size_t i2 = 0; i2 < n2; ++i2)
    for (std::size_t i1 = 0; i1 < n1; ++i1)
      for (std::size_t i0 = 0; i0 < n0; ++i0, ++idx) {
        if (std::abs(f.values()[idx]) <= cut) continue;
        const bool inside = std::fabs(g.coord(0, i0)) <= 0.5 * g.axis(0).extent * (1.0 + 1e-12) &&
                            (d < 2 || std::fabs(g.coord(1, i1)) <= 0.5 * g.axis(1).extent * (1.0 + 1e-12)) &&
                            (d < 3 || std::fabs(g.coord(2, i2)) <= 0.5 * g.axis(2).extent * (1.0 + 1e-12));
        if (!inside)
          throw std::domain_error(
              "sobolev_norm: support exceeds half the grid extent (zero extension would alias)");
      }
  return sobolev_norm_given_transform(fourier(f), s);
}

double sobolev_norm_given_transform(const SampledFunction& fhat, double s) {
  const auto& k = simd::active();
  const int d = fhat.grid().dim();
  double acc = 0.0;
  for_each_row(
      fhat,
      [&](double x0, double x1, double x2) {
        double q = x0 * x0;
        if (d > 1) q += x1 * x1;
        if (d > 2) q += x2 * x2;
        return std::pow(1.0 + q, s);
      },
      [&](const cdouble* row, const double* w, std::size_t n) {
        acc += k.reduce_abs2_weighted(row, w, n);
      });
  return std::sqrt(fhat.grid().cell_volume() * acc);
}

double weighted_l2(const SampledFunction& K, double s, AmbientNorm norm) {
  const double bf = boundary_mass_fraction(K);
  if (bf > 0.01)
    std::cerr << "warning: weighted_l2 tail mass fraction " << bf
              << " beyond 0.9R, grid may be too small\n";
  const auto& k = simd::active();
  const int d = K.grid().dim();
  double acc = 0.0;
  for_each_row(
      K,
      [&](double x0, double x1, double x2) {
        const double w = 1.0 + std::pow(point_norm(norm, x0, x1, x2, d), s);
        return w * w;
      },
      [&](const cdouble* row, const double* w, std::size_t n) {
        acc += k.reduce_abs2_weighted(row, w, n);
      });
  return std::sqrt(K.grid().cell_volume() * acc);
}

double l1_tail(const SampledFunction& K, double r0, AmbientNorm norm) {
  const auto& k = simd::active();
  const int d = K.grid().dim();
  double acc = 0.0;
  for_each_row(
      K,
      [&](double x0, double x1, double x2) {
        return point_norm(norm, x0, x1, x2, d) >= r0 ? 1.0 : 0.0;
      },
      [&](const cdouble* row, const double* w, std::size_t n) {
        acc += k.reduce_abs_weighted(row, w, n);
      });
  return K.grid().cell_volume() * acc;
}

double boundary_mass_fraction(const SampledFunction& K, double frac) {
  const auto& k = simd::active();
  const UniformGrid& g = K.grid();
  const int d = g.dim();
  double tail = 0.0;
  for_each_row(
      K,
      [&](double x0, double x1, double x2) {
        bool out = std::fabs(x0) >= frac * g.axis(0).extent;
        if (d > 1) out = out || std::fabs(x1) >= frac * g.axis(1).extent;
        if (d > 2) out = out || std::fabs(x2) >= frac * g.axis(2).extent;
        return out ? 1.0 : 0.0;
      },
      [&](const cdouble* row, const double* w, std::size_t n) {
        tail += k.reduce_abs_weighted(row, w, n);
      });
  const double total = k.reduce_abs(K.values().data(), K.values().size());
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace oscmult
