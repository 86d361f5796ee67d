// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oscmult/dyadic.hpp"
#include "oscmult/grid.hpp"
#include "oscmult/multiplier.hpp"
#include "oscmult/transforms.hpp"
#include "oscmult/window.hpp"

namespace oscmult {

struct RadialKernel {
  SampledFunction values;
  std::string origin;
  double l1 = 0.0;
  double l2 = 0.0;
  double multiplier_l2 = 0.0;  // L2 norm of the multiplier samples (Plancherel partner)
};

// Inverse transform of xi -> m(|xi|) restricted to lam_min <= |xi| <= lam_max,
// on the given spatial grid (n = dim, radial via the euclidean norm; n = 1 is
// the even extension). Throws ResolutionError when the truncation exceeds the
// resolved band or the kernel would spill past the grid.
RadialKernel kernel_of_radial_multiplier(const MultiplierSpec& spec, double lam_min,
                                         double lam_max, const UniformGrid& grid);

// Line grid adapted to the kernel of the rescaled piece m^j: extent covers the
// stationary radius of the oscillation with headroom, spacing resolves the
// [1/2, 2] band.
UniformGrid piece_kernel_grid(const MultiplierSpec& spec, int j, double min_extent = 64.0,
                              double spacing = 0.25);

// Kernel of the even extension of m^j(lam) = m(2^j lam) phi(lam) on a line grid.
RadialKernel piece_kernel_line(const MultiplierSpec& spec, const DyadicWindow& w, int j,
                               const UniformGrid& grid);

// ||(1 + |x|^2)^{-s/2}||_{L2(grid)}: the key-estimate constant.
double cs_constant(const UniformGrid& grid, double s);
// ||(1 + |x|^s)^{-1}||_{L2(grid, |x| >= r)}: the tail-chain constant.
double cs_tail_constant(const UniformGrid& grid, double s, double r,
                        AmbientNorm norm = AmbientNorm::euclidean);

struct KeyEstimate {
  double kernel_l1 = 0.0;
  double sobolev = 0.0;
  double constant = 0.0;  // cs_constant of the kernel grid
  double ratio = 0.0;     // kernel_l1 / sobolev (0 when sobolev = 0)
  bool within = false;    // kernel_l1 <= constant * sobolev
};
// The L1-vs-Sobolev inequality for a compactly supported F on a line grid.
KeyEstimate key_estimate_ratio(const SampledFunction& F, double s);

struct LargePartRow {
  int j = 0;
  double l1 = 0.0;           // ||kernel of m^j||_1 = ||kernel of m_j||_1
  double bound = 0.0;        // cs_constant * ||(1+x^2)^{s'/2} kernel||_2, grid-exact majorant
  double partial_sum = 0.0;  // running sum of l1
};
struct LargePartL1 {
  double s_prime = 0.0;
  double expected_rate = 0.0;  // theta (beta - 2 s')/2
  std::vector<LargePartRow> rows;
  double rate_bound = 0.0;   // fitted log2 decay rate of the bound sequence
  double rate_actual = 0.0;  // fitted log2 decay rate of the measured l1 norms
  double cauchy_tail = 0.0;  // |S_J - S_{J-1}| / S_J at j_max
};
// Partial sums of the piece-kernel L1 norms over j theta > 0 (beta > n = 1).
LargePartL1 large_part_l1(const MultiplierSpec& spec, const DyadicWindow& w, double s_prime,
                          int j_max);

struct FsCondition {
  std::vector<double> ys;
  std::vector<double> values;  // per-y integral over |x| > 2 |y|^{1-theta}
  double sup = 0.0;
};
// sup over y of int_{|x| > 2|y|^{1-theta}} |K(x - y) - K(x)| dx, y along axis 0.
FsCondition fefferman_stein_condition(const RadialKernel& K, double theta,
                                      const std::vector<double>& ys);

// Mf(x) = sup over dyadic radii r = 2^k h of r^{-n} int_{|y| <= r} |f(x-y)| dy.
SampledFunction hl_maximal(const SampledFunction& f);

struct FsMaximalCheck {
  double lhs = 0.0;  // || sqrt(sum (M chi_i)^2) ||_2
  double rhs = 0.0;  // || sqrt(sum chi_i^2) ||_2
  double constant = 0.0;
};
FsMaximalCheck fs_maximal_inequality(const std::vector<SampledFunction>& indicators);

struct MaxCharComparison {
  double c_min = 0.0;
  double c_max = 0.0;
};
// Range of M(chi_{B(0,r)})(x) (1 + |x|/r)^n over the grid.
MaxCharComparison max_char_comparison(double radius, const UniformGrid& grid);

// Multiplier samples of the smooth dyadic band [1, 2^{J+1}] of m on the
// frequency grid of `grid`, and application of any multiplier sample set.
SampledFunction band_multiplier(const MultiplierSpec& spec, const DyadicWindow& w, int J,
                                const UniformGrid& grid);
SampledFunction apply_multiplier(const SampledFunction& M, const SampledFunction& f);

struct LpRow {
  double p = 0.0;
  std::vector<double> lower_bounds;  // best family ratio per ladder rung
  double exponent = 0.0;             // fitted slope of log2(bound) vs log2(2^J)
  std::string verdict;               // "stable" or "growing"
};
struct LpScan {
  std::vector<int> ladder;          // J values; rung J applies the band [1, 2^{J+1}]
  std::vector<double> resolved_max;  // max |banded m| per rung (the p = 2 target)
  std::vector<LpRow> rows;
};
// Truncation-ladder lower bounds on the L^p operator norm of m, maximized
// over bumps, modulated bumps, spikes, kernel-shaped extremizers, and
// random-sign bump sums.
LpScan lp_scan(const MultiplierSpec& spec, const DyadicWindow& w,
               const std::vector<double>& p_grid, const std::vector<int>& ladder,
               std::uint64_t seed);

}  // namespace oscmult
