// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oscmult/grid.hpp"
#include "oscmult/multiplier.hpp"
#include "oscmult/window.hpp"

namespace oscmult {

// First Heisenberg group: points (x, y, t) with
//   (x, y, t) * (x', y', t') = (x + x', y + y', t + t' + (x y' - y x') / 2),
// dilations (r x, r y, r^2 t), and homogeneous dimension 4.
struct HPoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

inline constexpr int kHomogeneousDim = 4;

HPoint h_mul(const HPoint& a, const HPoint& b);
HPoint h_inv(const HPoint& a);
HPoint h_dilate(double r, const HPoint& a);

// ((x^2 + y^2)^2 + 16 t^2)^{1/4}, homogeneous of degree one under h_dilate
double koranyi_norm(const HPoint& g);

// grid over [-extent_xy, extent_xy)^2 x [-extent_t, extent_t)
UniformGrid heisenberg_grid(double extent_xy = 8.0, double extent_t = 16.0,
                            std::size_t n_xy = 128, std::size_t n_t = 256);

// Convolution kernel of h(sqrt(L)) for the sublaplacian L, synthesized from
// the joint spectrum:
//   K(rho, t) = (2 pi^2)^{-1} int_0^inf cos(lambda t)
//               sum_k h(sqrt((2k+1) lambda)) L_k(lambda rho^2 / 2)
//               exp(-lambda rho^2 / 4) lambda dlambda.
// The profile h must be negligible (|h| < tail_eps) by mu = mu_max; the sum
// and the integral are truncated where every surviving term is below
// tail_eps, and the lambda rule adapts to the grid's t extent.
struct SpectralSynthesis {
  SampledFunction kernel;
  std::size_t lambda_nodes = 0;
  std::size_t max_k = 0;        // largest Laguerre index summed
  double lambda_cap = 0.0;      // spectral support bound resolved from h
  std::size_t unique_rho2 = 0;  // size of the radial evaluation table
};

SpectralSynthesis sublaplacian_kernel(const std::function<cdouble(double)>& h,
                                      const UniformGrid& grid, double mu_max = 64.0,
                                      double tail_eps = 1e-15);

// Heat kernel exp(-L) from the closed-form radial integrand
//   (2 pi^2)^{-1} int_0^inf cos(lambda t) (lambda / (2 sinh lambda))
//                 exp(-(lambda coth lambda) rho^2 / 4) dlambda,
// evaluated without any Laguerre machinery.
SampledFunction heat_kernel_oracle(const UniformGrid& grid);

// Grid L2 mass of synthesized kernels against the spectral side
//   ||K_h||_2^2 = (1/8) int_0^inf |h(mu)|^2 mu^3 dmu
// for a fixed five-member profile family, plus a dilation ladder
// h_j(mu) = phi(2^{-j} mu) on co-dilated grids whose log2 L2 masses must
// climb with slope equal to the homogeneous dimension.
struct PlancherelRow {
  std::string label;
  double grid_l2sq = 0.0;
  double spectral_l2sq = 0.0;
  double ratio = 0.0;
};

struct PlancherelReport {
  std::vector<PlancherelRow> rows;
  double worst_ratio_error = 0.0;  // max |ratio - 1| over the family
  double dilation_slope = 0.0;
};

PlancherelReport plancherel_check(std::size_t n_xy = 64, std::size_t n_t = 128);

// X = d/dx - (y/2) d/dt and Y = d/dy + (x/2) d/dt by fourth-order centered
// differences with periodic wraparound
struct HorizontalDerivatives {
  SampledFunction xf;
  SampledFunction yf;
};

HorizontalDerivatives horizontal_derivatives(const SampledFunction& f);

// sup over random probes of |K(x.y) - K(x)| (1 + |x|)^N / |y| with
// |y| <= |x| / 10 in the Koranyi norm, trilinear interpolation off-grid
struct MeanValueReport {
  double sup_ratio = 0.0;
  std::size_t probes = 0;
};

MeanValueReport mean_value_check(const SampledFunction& K, double exponent_n,
                                 std::uint64_t seed, std::size_t probes = 256);

// Group-side analogue of the key kernel estimate: for each smoothness s the
// sup over j of ||K_{m_j}||_{L1} / ||m^j||_{L2_s}, where m_j is the dyadic
// piece m(mu^2) phi(2^{-j} mu^2) and m^j its rescaled line profile. No
// verdict is attached; the table is exploratory.
struct KeyLieRow {
  double s = 0.0;
  double sup_ratio = 0.0;
  std::vector<double> per_j;
};

std::vector<KeyLieRow> key_lie_probe(const MultiplierSpec& spec, const DyadicWindow& w,
                                     const std::vector<double>& s_grid, int j_min, int j_max);

}  // namespace oscmult
