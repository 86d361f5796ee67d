// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oscmult/simd.hpp"

using namespace oscmult;
using simd::cdouble;

namespace {

std::vector<cdouble> random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  std::vector<cdouble> v(n);
  for (auto& z : v) z = {u(), u()};
  return v;
}

std::vector<double> random_real(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  std::vector<double> v(n);
  for (auto& x : v) x = u();
  return v;
}

}  // namespace

TEST_CASE("scalar reductions: hand values") {
  const auto& k = simd::scalar_kernels();
  std::vector<cdouble> z = {{3.0, 4.0}, {0.0, -2.0}};
  CHECK(k.reduce_abs2(z.data(), 2) == doctest::Approx(29.0));
  CHECK(k.reduce_abs(z.data(), 2) == doctest::Approx(7.0));
  CHECK(k.reduce_max_abs(z.data(), 2) == doctest::Approx(5.0));
  std::vector<double> w = {2.0, 10.0};
  CHECK(k.reduce_abs2_weighted(z.data(), w.data(), 2) == doctest::Approx(90.0));
  CHECK(k.reduce_abs_weighted(z.data(), w.data(), 2) == doctest::Approx(30.0));
}

TEST_CASE("laguerre recurrence: l_k(0) = 1 and quadrature of L_k e^{-u/2}") {
  const auto& k = simd::scalar_kernels();
  // at w = 0 every weighted Laguerre function equals 1
  std::vector<double> coeff = {1.0, -2.0, 3.0, 0.5};
  double w0 = 0.0, out = 0.0;
  k.laguerre_sum(&w0, 1, coeff.data(), coeff.size(), &out);
  CHECK(out == doctest::Approx(2.5));

  // int_0^inf L_k(u) e^{-u/2} du = 2 (-1)^k
  const std::size_t n = 1 << 16;
  const double h = 400.0 / static_cast<double>(n);
  std::vector<double> u(n), acc(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) u[i] = (static_cast<double>(i) + 0.5) * h;
  for (std::size_t kk = 0; kk < 6; ++kk) {
    std::vector<double> c(kk + 1, 0.0);
    c[kk] = 1.0;
    std::fill(acc.begin(), acc.end(), 0.0);
    k.laguerre_sum(u.data(), n, c.data(), c.size(), acc.data());
    double integral = 0.0;
    for (double v : acc) integral += v * h;
    CHECK(integral == doctest::Approx(2.0 * (kk % 2 == 0 ? 1.0 : -1.0)).epsilon(1e-4));
  }
}

TEST_CASE("avx2 variants match scalar reference") {
  if (!simd::avx2_supported()) {
    MESSAGE("AVX2 not available, skipping equivalence checks");
    return;
  }
#if defined(__x86_64__) || defined(_M_X64)
  const auto& s = simd::scalar_kernels();
  const auto& a = simd::avx2_kernels();
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 17u, 64u, 1023u, 4096u}) {
    auto z = random_complex(n, 7 * n + 1);
    auto w = random_real(n, 13 * n + 5);
    for (auto& x : w) x = std::fabs(x) + 0.25;
    const double tol = 1e-12;
    CHECK(a.reduce_abs2(z.data(), n) ==
          doctest::Approx(s.reduce_abs2(z.data(), n)).epsilon(tol));
    CHECK(a.reduce_abs2_weighted(z.data(), w.data(), n) ==
          doctest::Approx(s.reduce_abs2_weighted(z.data(), w.data(), n)).epsilon(tol));
    CHECK(a.reduce_abs(z.data(), n) ==
          doctest::Approx(s.reduce_abs(z.data(), n)).epsilon(tol));
    CHECK(a.reduce_abs_weighted(z.data(), w.data(), n) ==
          doctest::Approx(s.reduce_abs_weighted(z.data(), w.data(), n)).epsilon(tol));
    CHECK(a.reduce_max_abs(z.data(), n) ==
          doctest::Approx(s.reduce_max_abs(z.data(), n)).epsilon(tol));
    CHECK(a.reduce_sum(w.data(), n) ==
          doctest::Approx(s.reduce_sum(w.data(), n)).epsilon(tol));

    auto x = random_real(n, 31 * n + 2);
    CHECK(a.dot(x.data(), w.data(), n) ==
          doctest::Approx(s.dot(x.data(), w.data(), n)).epsilon(tol));
    CHECK(a.reduce_abs_w(x.data(), w.data(), n) ==
          doctest::Approx(s.reduce_abs_w(x.data(), w.data(), n)).epsilon(tol));
    CHECK(a.reduce_sq_w(x.data(), w.data(), n) ==
          doctest::Approx(s.reduce_sq_w(x.data(), w.data(), n)).epsilon(tol));

    auto z1 = z, z2 = z;
    s.scale_by_real(z1.data(), w.data(), n);
    a.scale_by_real(z2.data(), w.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(z1[i] - z2[i]) < 1e-14);

    auto y1 = random_real(n, 3 * n), y2 = y1;
    s.axpy(0.7, x.data(), y1.data(), n);
    a.axpy(0.7, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(tol));

    // laguerre sums: positive arguments
    auto u = random_real(n, 17 * n + 3);
    for (auto& t : u) t = 4.0 * std::fabs(t);
    auto c = random_real(37, 11 * n + 9);
    std::vector<double> o1(n, 0.1), o2(n, 0.1);
    s.laguerre_sum(u.data(), n, c.data(), c.size(), o1.data());
    a.laguerre_sum(u.data(), n, c.data(), c.size(), o2.data());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(o1[i] == doctest::Approx(o2[i]).epsilon(1e-11));
  }

  // butterfly stage equivalence on a full pass structure
  for (std::size_t len : {2u, 4u, 8u, 64u}) {
    const std::size_t n = 256;
    auto z1 = random_complex(n, len), z2 = z1;
    std::vector<double> wre(len), wim(len);
    for (std::size_t q = 0; q < len / 2; ++q) {
      const double ang = -2.0 * 3.14159265358979323846 * static_cast<double>(q) /
                         static_cast<double>(len);
      wre[2 * q] = wre[2 * q + 1] = std::cos(ang);
      wim[2 * q] = wim[2 * q + 1] = std::sin(ang);
    }
    s.fft_stage(z1.data(), n, len, wre.data(), wim.data());
    a.fft_stage(z2.data(), n, len, wre.data(), wim.data());
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(z1[i] - z2[i]) < 1e-13);
  }
#endif
}

TEST_CASE("isa dispatch can be forced") {
  const simd::Isa before = simd::active_isa();
  simd::force_isa(simd::Isa::scalar);
  CHECK(simd::active_isa() == simd::Isa::scalar);
  CHECK(simd::active().reduce_sum != nullptr);
  simd::force_isa(before);
  CHECK(simd::active_isa() == before);
}
