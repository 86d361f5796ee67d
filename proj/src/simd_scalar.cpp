// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/simd.hpp"

#include <cmath>

namespace oscmult::simd {
namespace {

double s_reduce_abs2(const cdouble* z, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(z[i]);
  return acc;
}

double s_reduce_abs2_weighted(const cdouble* z, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(z[i]) * w[i];
  return acc;
}

double s_reduce_abs(const cdouble* z, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::abs(z[i]);
  return acc;
}

double s_reduce_abs_weighted(const cdouble* z, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::abs(z[i]) * w[i];
  return acc;
}

double s_reduce_max_abs(const cdouble* z, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::norm(z[i]));
  return std::sqrt(m);
}

void s_scale_by_real(cdouble* z, const double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] *= w[i];
}

void s_axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double s_dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double s_reduce_sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double s_reduce_abs_w(const double* x, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i]) * w[i];
  return acc;
}

double s_reduce_sq_w(const double* x, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i] * w[i];
  return acc;
}

// Weighted Laguerre functions l_k(w) = L_k(w) exp(-w/2) satisfy
//   (k+1) l_{k+1} = (2k+1-w) l_k - k l_{k-1},  |l_k| <= 1,
// so the recurrence is stable for w >= 0.
void s_laguerre_sum(const double* w, std::size_t n, const double* coeff,
                    std::size_t nk, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double u = w[i];
    double lkm1 = 0.0;
    double lk = std::exp(-0.5 * u);
    double acc = nk > 0 ? coeff[0] * lk : 0.0;
    for (std::size_t k = 1; k < nk; ++k) {
      const double dk = static_cast<double>(k - 1);
      const double lkp1 = ((2.0 * dk + 1.0 - u) * lk - dk * lkm1) / (dk + 1.0);
      lkm1 = lk;
      lk = lkp1;
      acc += coeff[k] * lk;
    }
    out[i] += acc;
  }
}

void s_fft_stage(cdouble* a, std::size_t n, std::size_t len,
                 const double* wre, const double* wim) {
  const std::size_t half = len / 2;
  for (std::size_t start = 0; start < n; start += len) {
    for (std::size_t q = 0; q < half; ++q) {
      const double wr = wre[2 * q];
      const double wi = wim[2 * q];
      cdouble& lo = a[start + q];
      cdouble& hi = a[start + q + half];
      const double tr = hi.real() * wr - hi.imag() * wi;
      const double ti = hi.real() * wi + hi.imag() * wr;
      const double lr = lo.real();
      const double li = lo.imag();
      lo = {lr + tr, li + ti};
      hi = {lr - tr, li - ti};
    }
  }
}

Kernels make_scalar() {
  Kernels k{};
  k.reduce_abs2 = s_reduce_abs2;
  k.reduce_abs2_weighted = s_reduce_abs2_weighted;
  k.reduce_abs = s_reduce_abs;
  k.reduce_abs_weighted = s_reduce_abs_weighted;
  k.reduce_max_abs = s_reduce_max_abs;
  k.scale_by_real = s_scale_by_real;
  k.axpy = s_axpy;
  k.dot = s_dot;
  k.reduce_sum = s_reduce_sum;
  k.reduce_abs_w = s_reduce_abs_w;
  k.reduce_sq_w = s_reduce_sq_w;
  k.laguerre_sum = s_laguerre_sum;
  k.fft_stage = s_fft_stage;
  return k;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k = make_scalar();
  return k;
}

}  // namespace oscmult::simd
