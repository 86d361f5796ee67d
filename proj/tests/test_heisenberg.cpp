// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "oscmult/heisenberg.hpp"
#include "oscmult/multiplier.hpp"
#include "oscmult/rng.hpp"
#include "oscmult/window.hpp"

using namespace oscmult;

namespace {
constexpr double kPi = std::numbers::pi;

cdouble heat_profile(double mu) { return cdouble(std::exp(-mu * mu), 0.0); }

// independent trilinear lookup with periodic wraparound, for the convolution
// cross-check below
cdouble lerp3(const SampledFunction& f, double x, double y, double t) {
  const UniformGrid& g = f.grid();
  const double c[3] = {x, y, t};
  std::size_t lo[3];
  double fr[3];
  for (int a = 0; a < 3; ++a) {
    const double u = (c[a] + g.axis(a).extent) / g.spacing(a);
    const double fl = std::floor(u);
    const auto n = static_cast<long long>(g.axis(a).n);
    lo[a] = static_cast<std::size_t>(((static_cast<long long>(fl) % n) + n) % n);
    fr[a] = u - fl;
  }
  cdouble acc(0.0, 0.0);
  for (int b = 0; b < 8; ++b) {
    double wgt = 1.0;
    std::size_t idx[3];
    for (int a = 0; a < 3; ++a) {
      const bool hi = (b >> a) & 1;
      wgt *= hi ? fr[a] : 1.0 - fr[a];
      idx[a] = (lo[a] + (hi ? 1 : 0)) % f.grid().axis(a).n;
    }
    acc += wgt * f.at(idx[0], idx[1], idx[2]);
  }
  return acc;
}
}  // namespace

TEST_CASE("group law: twist, inverses, dilations") {
  const HPoint a{1.0, 0.0, 0.0}, b{0.0, 1.0, 0.0};
  const HPoint ab = h_mul(a, b), ba = h_mul(b, a);
  CHECK(ab.x == 1.0);
  CHECK(ab.y == 1.0);
  CHECK(ab.t == 0.5);
  CHECK(ba.t == -0.5);

  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const HPoint p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const HPoint q{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const HPoint r{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};

    const HPoint lhs = h_mul(h_mul(p, q), r), rhs = h_mul(p, h_mul(q, r));
    CHECK(lhs.x == doctest::Approx(rhs.x).epsilon(1e-13));
    CHECK(lhs.y == doctest::Approx(rhs.y).epsilon(1e-13));
    CHECK(lhs.t == doctest::Approx(rhs.t).epsilon(1e-13));

    const HPoint e = h_mul(p, h_inv(p));
    CHECK(e.x == 0.0);
    CHECK(e.y == 0.0);
    CHECK(e.t == 0.0);

    const double s = rng.uniform(0.5, 3.0);
    const HPoint d1 = h_dilate(s, h_mul(p, q)), d2 = h_mul(h_dilate(s, p), h_dilate(s, q));
    CHECK(d1.x == doctest::Approx(d2.x).epsilon(1e-13));
    CHECK(d1.t == doctest::Approx(d2.t).epsilon(1e-13));

    CHECK(koranyi_norm(h_dilate(s, p)) == doctest::Approx(s * koranyi_norm(p)).epsilon(1e-12));
    CHECK(koranyi_norm(h_inv(p)) == koranyi_norm(p));
  }
  CHECK(koranyi_norm({1.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(koranyi_norm({0.0, 0.0, 1.0}) == doctest::Approx(2.0));
  CHECK(kHomogeneousDim == 4);
}

TEST_CASE("haar measure scales with the fourth power under dilation") {
  const UniformGrid g = heisenberg_grid();
  auto f = SampledFunction::sample(g, [](double x, double y, double t) {
    return cdouble(std::exp(-(x * x + y * y) - t * t), 0.0);
  });
  auto f2 = SampledFunction::sample(g, [](double x, double y, double t) {
    const HPoint d = h_dilate(2.0, {x, y, t});
    return cdouble(std::exp(-(d.x * d.x + d.y * d.y) - d.t * d.t), 0.0);
  });
  const double exact = kPi * std::sqrt(kPi);
  CHECK(f.integral().real() == doctest::Approx(exact).epsilon(1e-6));
  CHECK(f2.integral().real() == doctest::Approx(exact / 16.0).epsilon(1e-6));
}

TEST_CASE("closed-form heat kernel hits its exact values") {
  const UniformGrid g = heisenberg_grid();
  auto K = heat_kernel_oracle(g);
  const std::size_t cx = 64, ct = 128;
  CHECK(K.at(cx, cx, ct).real() == doctest::Approx(1.0 / 16.0).epsilon(1e-9));
  for (const double t : {0.5, 1.0, 2.0, 4.0}) {
    const auto it = static_cast<std::size_t>(std::llround((t + 16.0) / 0.125));
    const double expect = 1.0 / (16.0 * std::pow(std::cosh(kPi * t / 2.0), 2.0));
    CHECK(K.at(cx, cx, it).real() == doctest::Approx(expect).epsilon(1e-9));
  }
  CHECK(K.integral().real() == doctest::Approx(1.0).epsilon(1e-6));
  double imag = 0.0;
  for (const auto& v : K.values()) imag = std::max(imag, std::abs(v.imag()));
  CHECK(imag == 0.0);
}

TEST_CASE("spectral synthesis reproduces the heat kernel") {
  const UniformGrid g = heisenberg_grid();
  auto oracle = heat_kernel_oracle(g);
  auto syn = sublaplacian_kernel(heat_profile, g);
  CHECK(syn.lambda_cap == doctest::Approx(34.54).epsilon(0.01));
  CHECK(syn.max_k > 100);
  CHECK(syn.unique_rho2 >= 65);
  CHECK(syn.unique_rho2 <= 2145);

  double worst = 0.0;
  for (std::size_t it = 0; it < g.axis(2).n; ++it) {
    const double t = g.coord(2, it);
    for (std::size_t i1 = 0; i1 < g.axis(1).n; ++i1) {
      const double y = g.coord(1, i1);
      for (std::size_t i0 = 0; i0 < g.axis(0).n; ++i0) {
        const double x = g.coord(0, i0);
        if (x * x + y * y + std::abs(t) > 4.0) continue;
        const double ref = oracle.at(i0, i1, it).real();
        const double got = syn.kernel.at(i0, i1, it).real();
        worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
      }
    }
  }
  CHECK(worst < 1e-6);
  CHECK(syn.kernel.integral().real() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("synthesis guards its spectral support and grid shape") {
  const UniformGrid g = heisenberg_grid(8.0, 16.0, 64, 128);
  CHECK_THROWS_AS(
      (void)sublaplacian_kernel([](double mu) { return cdouble(1.0 / (1.0 + mu), 0.0); }, g),
      std::runtime_error);
  CHECK_THROWS_AS(
      (void)sublaplacian_kernel([](double) { return cdouble(0.0, 0.0); }, g),
      std::runtime_error);
  CHECK_THROWS_AS((void)sublaplacian_kernel(heat_profile, UniformGrid::line(8.0, 64)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)sublaplacian_kernel(
          heat_profile, UniformGrid({Axis{8.0, 64}, Axis{4.0, 64}, Axis{16.0, 128}})),
      std::invalid_argument);
}

TEST_CASE("grid L2 masses match the spectral side and dilate at power four") {
  auto rep = plancherel_check();
  REQUIRE(rep.rows.size() == 9);
  CHECK(rep.rows[0].spectral_l2sq == doctest::Approx(1.0 / 64.0).epsilon(1e-8));
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(rep.rows[i].ratio - 1.0) < 0.02);
  }
  CHECK(rep.worst_ratio_error < 0.02);
  CHECK(std::abs(rep.dilation_slope - 4.0) < 0.05);
}

TEST_CASE("synthesized kernels obey the semigroup under group convolution") {
  const UniformGrid g = heisenberg_grid(8.0, 16.0, 64, 128);
  auto k1 = sublaplacian_kernel(heat_profile, g).kernel;
  auto k2 = sublaplacian_kernel(
                [](double mu) { return cdouble(std::exp(-2.0 * mu * mu), 0.0); }, g)
                .kernel;
  CHECK(k2.at(32, 32, 64).real() == doctest::Approx(1.0 / 64.0).epsilon(1e-6));

  const double cell = g.cell_volume();
  const double peak = k2.at(32, 32, 64).real();
  const std::vector<HPoint> zs = {
      {0.0, 0.0, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.0, 0.5}, {1.0, 1.0, 0.25}, {0.25, -0.5, -0.125}};
  for (const auto& z : zs) {
    cdouble acc(0.0, 0.0);
    for (std::size_t it = 0; it < g.axis(2).n; ++it) {
      for (std::size_t i1 = 0; i1 < g.axis(1).n; ++i1) {
        for (std::size_t i0 = 0; i0 < g.axis(0).n; ++i0) {
          const HPoint w{g.coord(0, i0), g.coord(1, i1), g.coord(2, it)};
          const cdouble kw = k1.at(i0, i1, it);
          if (std::abs(kw) < 1e-12) continue;
          const HPoint rest = h_mul(h_inv(w), z);
          acc += kw * lerp3(k1, rest.x, rest.y, rest.t);
        }
      }
    }
    acc *= cell;
    const double direct = lerp3(k2, z.x, z.y, z.t).real();
    CHECK(std::abs(acc.real() - direct) / peak < 0.02);
  }
}

TEST_CASE("horizontal derivatives satisfy polynomial oracles") {
  const UniformGrid g = heisenberg_grid(4.0, 8.0, 16, 32);
  auto f = SampledFunction::sample(
      g, [](double x, double y, double t) { return cdouble(x * x * y + t * t, 0.0); });
  auto d = horizontal_derivatives(f);
  // X f = 2xy - (y/2) 2t, Y f = x^2 + (x/2) 2t, exact away from the wrap
  for (std::size_t i2 = 2; i2 < 30; ++i2) {
    for (std::size_t i1 = 2; i1 < 14; ++i1) {
      for (std::size_t i0 = 2; i0 < 14; ++i0) {
        const double x = g.coord(0, i0), y = g.coord(1, i1), t = g.coord(2, i2);
        CHECK(d.xf.at(i0, i1, i2).real() ==
              doctest::Approx(2.0 * x * y - y * t).epsilon(1e-11));
        CHECK(std::abs(d.xf.at(i0, i1, i2).imag()) < 1e-12);
        CHECK(d.yf.at(i0, i1, i2).real() == doctest::Approx(x * x + x * t).epsilon(1e-11));
      }
    }
  }
  CHECK_THROWS_AS((void)horizontal_derivatives(SampledFunction(UniformGrid::square(4.0, 16))),
                  std::invalid_argument);
}

TEST_CASE("mean value probe is finite for the heat kernel and deterministic") {
  const UniformGrid g = heisenberg_grid(8.0, 16.0, 64, 128);
  auto K = heat_kernel_oracle(g);
  auto rep = mean_value_check(K, 5.0, 404, 128);
  CHECK(rep.probes == 128);
  CHECK(rep.sup_ratio > 0.0);
  CHECK(rep.sup_ratio < 100.0);
  auto again = mean_value_check(K, 5.0, 404, 128);
  CHECK(again.sup_ratio == rep.sup_ratio);
  CHECK_THROWS_AS((void)mean_value_check(K, 5.0, 1, 0), std::invalid_argument);
}

TEST_CASE("group-side kernel/profile ratios shrink as smoothness grows") {
  DyadicWindow w;
  auto spec = MultiplierSpec::oscillating(0.5, 1.0);
  const std::vector<double> ss = {0.6, 1.0, 1.5};
  auto rows = key_lie_probe(spec, w, ss, 1, 4);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.per_j.size() == 4);
    for (const double v : row.per_j) {
      CHECK(v > 0.0);
      CHECK(std::isfinite(v));
    }
  }
  CHECK(rows[0].sup_ratio >= rows[1].sup_ratio);
  CHECK(rows[1].sup_ratio >= rows[2].sup_ratio);

  CHECK_THROWS_AS((void)key_lie_probe(spec, w, {}, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)key_lie_probe(spec, w, ss, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)key_lie_probe(MultiplierSpec::oscillating(-1.0, 2.0), w, ss, 1, 4),
                  std::invalid_argument);
}
