// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oscmult/fit.hpp"
#include "oscmult/grid.hpp"
#include "oscmult/multiplier.hpp"
#include "oscmult/window.hpp"

namespace oscmult {

// Dyadic selection cube: a block of 2^k grid cells per axis. The level is the
// log2 of the physical side.
struct CzCube {
  std::array<std::size_t, 3> lo{};
  std::size_t side = 0;  // cells per axis
  int level = 0;
  cdouble average{};     // mean of f over the cube
  double abs_average = 0.0;
  double measure = 0.0;
};

struct CzDecomposition {
  SampledFunction good;
  SampledFunction bad;  // sum of the b_B; their supports are disjoint
  std::vector<CzCube> cubes;
  double alpha = 0.0;
};

// Stopping-time decomposition of f at height alpha: descend from the whole
// grid, selecting a cube the first time its average of |f| exceeds alpha.
// On the selected cubes g is the cube average of f and b_B = (f - avg) chi_B;
// elsewhere g = f. Throws std::invalid_argument when alpha <= 0, when the
// root average already exceeds alpha, or when the grid axes are not
// congruent (dyadic cubes need a common cell shape).
CzDecomposition cz_decompose(const SampledFunction& f, double alpha);

// b_B of a single selected cube, as a function on the full grid.
SampledFunction cz_bad_part(const CzDecomposition& dec, std::size_t cube_index);

enum class AtomShape { bump_dipole, step_dipole, random_mean_zero };

// Mean-zero unit of Hardy-space testing: supported in [center - 2^L,
// center + 2^L] on a line grid, with ||a||_inf <= |B|^{-1} and
// ||a||_2 <= |B|^{-1/2} for |B| = 2 * 2^L.
struct Atom {
  SampledFunction values;
  int level = 0;
  double center = 0.0;
  double ball_measure = 0.0;
};

Atom make_atom(AtomShape shape, int level, const UniformGrid& grid, double center = 0.0,
               std::uint64_t seed = 1);

// cellvol * sum_{|x - center| >= radius} |f| on a line grid.
double l1_ball_complement(const SampledFunction& f, double center, double radius);

struct AtomRow {
  int level = 0;
  double total = 0.0;       // ||T a||_1
  double far = 0.0;         // mass at |x| >= 8 * 2^L
  double near = 0.0;        // mass at |x| < 8 * 2^L
  double near_bound = 0.0;  // sqrt(near measure) * max|M| * ||a||_2
};

struct AtomTestReport {
  std::vector<AtomRow> rows;
  double far_min = 0.0;
  double far_max = 0.0;
  double far_spread = 0.0;  // far_max / far_min
};

// Applies the dyadic band [1, 2^{J+1}] of the multiplier to atoms at the
// given levels (per-level adapted line grids) and integrates |T a| over the
// near and far fields split at 8 * 2^L. With ablate_cancellation the atom is
// replaced by its modulus, deliberately discarding the mean-zero property.
AtomTestReport atom_test(const MultiplierSpec& spec, const DyadicWindow& w, int J,
                         AtomShape shape, const std::vector<int>& levels, std::uint64_t seed,
                         bool ablate_cancellation = false);

struct PairPartition {
  std::vector<std::pair<int, int>> n_set;  // (j, L) with j(1-theta) + L <= 0
  std::vector<std::pair<int, int>> p_set;
};

// Splits {(j, L)} by the sign of j(1-theta) + L. Every j must satisfy
// j*theta > 0; theta = 1 is rejected.
PairPartition partition_pairs(const std::vector<int>& js, const std::vector<int>& levels,
                              double theta);

struct TailSumCell {
  int j = 0;
  int level = 0;
  double nu = 0.0;      // j(1-theta) + L
  double actual = 0.0;  // tail mass of the rescaled piece kernel at 8 * 2^{j+L}
  double bound = 0.0;   // cs_tail_constant * weighted_l2, the Cauchy-Schwarz majorant
};

struct TailSumReport {
  double s = 0.0;
  std::vector<TailSumCell> cells;       // pairs with nu >= 0, row-major in (j, L)
  std::vector<int> levels;
  std::vector<double> level_sums;       // per-L sum of actual over included j
  double sup_level_sum = 0.0;
  LineFit bound_fit;                    // log2(bound) against nu
  double expected_slope = 0.0;          // -(s - 1/2)
};

// Piece-kernel tail masses in rescaled units: for each pair with
// nu = j(1-theta) + L >= 0, integrates |K^j| over |x| >= 8 * 2^{j+L} on a
// grid of extent 4 * 8 * 2^{j+L} (an exact power of two, so the tail constant
// scales cleanly), and majorizes each summand by cs_tail_constant * the
// s-weighted L2 norm of the kernel. Requires s > 1/2 and j*theta > 0.
TailSumReport tail_sum_criterion(const MultiplierSpec& spec, const DyadicWindow& w, double s,
                                 const std::vector<int>& js, const std::vector<int>& levels);

struct WeakTypeRow {
  std::string input;
  int J = 0;
  double constant = 0.0;  // sup_alpha alpha |{|Tf| > alpha}| / ||f||_1
};

struct WeakTypeReport {
  std::vector<int> ladder;
  std::vector<WeakTypeRow> rows;
  double spike_spread = 0.0;  // max/min of the spike constants across the ladder
  double family_sup = 0.0;
};

// Empirical weak-(1,1) constants across a truncation ladder. The family is a
// single-cell spike, a smooth bump, a near-atom (fine step dipole), and a
// seeded spike train; the sup over alpha is computed exactly from the sorted
// values of |Tf|.
WeakTypeReport weak_type_probe(const MultiplierSpec& spec, const DyadicWindow& w,
                               const std::vector<int>& ladder, std::uint64_t seed);

// sup_alpha alpha |{|f| > alpha}| / scale, exact over the sample values.
double weak_quasinorm(const SampledFunction& f, double scale);

enum class SplitRegime { n1, n2 };

struct LambdaChoice {
  double lambda = 0.0;           // the split radius exponent as printed
  double lambda_balanced = 0.0;  // exact equality point of the two term bounds
  double s_term = 0.0;           // short-range bound at lambda_balanced
  double l_term = 0.0;           // long-range bound at lambda_balanced
  double balanced_sum = 0.0;
};

// Split-radius optimization for the two-term tail bounds. Requires
// j*theta > 0 and j(1-theta) + L <= 0; the n1 regime additionally needs
// j + q_threshold <= 0 (n2 the complement). In n1 both printed and balanced
// choices coincide at -(j(1-theta) + L) and the two terms are exactly equal;
// in n2 the printed exponent carries j*theta*s/2 where exact balance needs
// j*theta*s, so both are returned and the terms are evaluated at balance.
LambdaChoice optimal_lambda(int j, int level, double theta, double s, double s_star, double q,
                            SplitRegime regime, double q_threshold);

}  // namespace oscmult
