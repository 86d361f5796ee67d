// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace oscmult::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// [w0 w1] -> [w0 w0 w1 w1], matching interleaved complex lanes
inline __m256d dup_pair(const double* w) {
  __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(w));
  return _mm256_permute4x64_pd(v, 0x50);
}

double a_reduce_abs2(const cdouble* z, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(p + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += std::norm(z[i]);
  return out;
}

double a_reduce_abs2_weighted(const cdouble* z, const double* w, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(p + 2 * i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), dup_pair(w + i), acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += std::norm(z[i]) * w[i];
  return out;
}

// |z| for four consecutive complex values, in order [|z0| |z2| |z1| |z3|]
inline __m256d abs4_scrambled(const double* p) {
  __m256d a = _mm256_loadu_pd(p);
  __m256d b = _mm256_loadu_pd(p + 4);
  __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
  return _mm256_sqrt_pd(h);
}

double a_reduce_abs(const cdouble* z, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, abs4_scrambled(p + 2 * i));
  double out = hsum(acc);
  for (; i < n; ++i) out += std::abs(z[i]);
  return out;
}

double a_reduce_abs_weighted(const cdouble* z, const double* w, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // weights reordered to the scrambled [0 2 1 3] modulus order
    __m256d wv = _mm256_permute4x64_pd(_mm256_loadu_pd(w + i), 0xD8);
    acc = _mm256_fmadd_pd(abs4_scrambled(p + 2 * i), wv, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += std::abs(z[i]) * w[i];
  return out;
}

double a_reduce_max_abs(const cdouble* z, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v2 = _mm256_loadu_pd(p + 2 * i);
    v2 = _mm256_mul_pd(v2, v2);
    acc = _mm256_max_pd(acc, _mm256_add_pd(v2, _mm256_permute_pd(v2, 0x5)));
  }
  double m = hmax(acc);
  for (; i < n; ++i) m = std::max(m, std::norm(z[i]));
  return std::sqrt(m);
}

void a_scale_by_real(cdouble* z, const double* w, std::size_t n) {
  double* p = reinterpret_cast<double*>(z);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(p + 2 * i);
    _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(v, dup_pair(w + i)));
  }
  for (; i < n; ++i) z[i] *= w[i];
}

void a_axpy(double a, const double* x, double* y, std::size_t n) {
  __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double a_dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double out = hsum(acc);
  for (; i < n; ++i) out += x[i] * y[i];
  return out;
}

double a_reduce_sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double out = hsum(acc);
  for (; i < n; ++i) out += x[i];
  return out;
}

double a_reduce_abs_w(const double* x, const double* w, std::size_t n) {
  const __m256d mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_andnot_pd(mask, _mm256_loadu_pd(x + i));
    acc = _mm256_fmadd_pd(v, _mm256_loadu_pd(w + i), acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += std::fabs(x[i]) * w[i];
  return out;
}

double a_reduce_sq_w(const double* x, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), _mm256_loadu_pd(w + i), acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += x[i] * x[i] * w[i];
  return out;
}

void a_laguerre_sum(const double* w, std::size_t n, const double* coeff,
                    std::size_t nk, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d u = _mm256_loadu_pd(w + i);
    __m256d lk = _mm256_set_pd(std::exp(-0.5 * w[i + 3]), std::exp(-0.5 * w[i + 2]),
                               std::exp(-0.5 * w[i + 1]), std::exp(-0.5 * w[i]));
    __m256d lkm1 = _mm256_setzero_pd();
    __m256d acc = nk > 0 ? _mm256_mul_pd(_mm256_set1_pd(coeff[0]), lk)
                         : _mm256_setzero_pd();
    for (std::size_t k = 1; k < nk; ++k) {
      const double dk = static_cast<double>(k - 1);
      __m256d t = _mm256_mul_pd(_mm256_sub_pd(_mm256_set1_pd(2.0 * dk + 1.0), u), lk);
      t = _mm256_fnmadd_pd(_mm256_set1_pd(dk), lkm1, t);
      t = _mm256_mul_pd(t, _mm256_set1_pd(1.0 / (dk + 1.0)));
      lkm1 = lk;
      lk = t;
      acc = _mm256_fmadd_pd(_mm256_set1_pd(coeff[k]), lk, acc);
    }
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), acc));
  }
  if (i < n) scalar_kernels().laguerre_sum(w + i, n - i, coeff, nk, out + i);
}

void a_fft_stage(cdouble* a, std::size_t n, std::size_t len,
                 const double* wre, const double* wim) {
  const std::size_t half = len / 2;
  if (half < 2) {
    scalar_kernels().fft_stage(a, n, len, wre, wim);
    return;
  }
  double* p = reinterpret_cast<double*>(a);
  for (std::size_t start = 0; start < n; start += len) {
    double* lo = p + 2 * start;
    double* hi = lo + 2 * half;
    for (std::size_t q = 0; q < half; q += 2) {
      __m256d hv = _mm256_loadu_pd(hi + 2 * q);
      __m256d hsw = _mm256_permute_pd(hv, 0x5);
      __m256d p2 = _mm256_mul_pd(hsw, _mm256_loadu_pd(wim + 2 * q));
      __m256d t = _mm256_fmaddsub_pd(hv, _mm256_loadu_pd(wre + 2 * q), p2);
      __m256d lv = _mm256_loadu_pd(lo + 2 * q);
      _mm256_storeu_pd(lo + 2 * q, _mm256_add_pd(lv, t));
      _mm256_storeu_pd(hi + 2 * q, _mm256_sub_pd(lv, t));
    }
  }
}

Kernels make_avx2() {
  Kernels k{};
  k.reduce_abs2 = a_reduce_abs2;
  k.reduce_abs2_weighted = a_reduce_abs2_weighted;
  k.reduce_abs = a_reduce_abs;
  k.reduce_abs_weighted = a_reduce_abs_weighted;
  k.reduce_max_abs = a_reduce_max_abs;
  k.scale_by_real = a_scale_by_real;
  k.axpy = a_axpy;
  k.dot = a_dot;
  k.reduce_sum = a_reduce_sum;
  k.reduce_abs_w = a_reduce_abs_w;
  k.reduce_sq_w = a_reduce_sq_w;
  k.laguerre_sum = a_laguerre_sum;
  k.fft_stage = a_fft_stage;
  return k;
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels k = make_avx2();
  return k;
}

}  // namespace oscmult::simd

#endif  // x86_64
