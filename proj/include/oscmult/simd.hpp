// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Vectorized inner loops used by the transform/synthesis code. Every kernel
// has a scalar reference implementation and (on x86-64) an AVX2+FMA variant;
// the active variant is resolved once at startup from CPU capabilities and
// can be overridden with OSCMULT_SIMD=scalar|avx2|auto or force_isa().
namespace oscmult::simd {

using cdouble = std::complex<double>;

enum class Isa { scalar, avx2 };

Isa active_isa();
void force_isa(Isa isa);
bool avx2_supported();
std::string isa_name(Isa isa);

struct Kernels {
  // sum |z[i]|^2
  double (*reduce_abs2)(const cdouble* z, std::size_t n);
  // sum |z[i]|^2 * w[i]
  double (*reduce_abs2_weighted)(const cdouble* z, const double* w, std::size_t n);
  // sum |z[i]|
  double (*reduce_abs)(const cdouble* z, std::size_t n);
  // sum |z[i]| * w[i]
  double (*reduce_abs_weighted)(const cdouble* z, const double* w, std::size_t n);
  // max |z[i]|
  double (*reduce_max_abs)(const cdouble* z, std::size_t n);
  // z[i] *= w[i]
  void (*scale_by_real)(cdouble* z, const double* w, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // sum x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum x[i]
  double (*reduce_sum)(const double* x, std::size_t n);
  // sum |x[i]| * w[i]
  double (*reduce_abs_w)(const double* x, const double* w, std::size_t n);
  // sum x[i]^2 * w[i]
  double (*reduce_sq_w)(const double* x, const double* w, std::size_t n);
  // out[i] += sum_{k<nk} coeff[k] * L_k(w[i]) exp(-w[i]/2), three-term recurrence
  void (*laguerre_sum)(const double* w, std::size_t n, const double* coeff,
                       std::size_t nk, double* out);
  // one radix-2 butterfly stage over a length-n array; wre/wim hold the
  // len/2 stage twiddles duplicated into even/odd double lanes
  void (*fft_stage)(cdouble* a, std::size_t n, std::size_t len,
                    const double* wre, const double* wim);
};

const Kernels& active();
const Kernels& scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
const Kernels& avx2_kernels();
#endif

}  // namespace oscmult::simd
