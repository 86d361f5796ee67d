// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oscmult/grid.hpp"
#include "oscmult/multiplier.hpp"
#include "oscmult/window.hpp"

namespace oscmult {

// Raised when a requested object oscillates too fast for its grid.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Embedding line for multiplier pieces: supp m^j subset [1/2, 2] sits well
// inside [-8, 8) with the slack sobolev_norm needs for zero extension.
UniformGrid default_piece_grid();

// Unrescaled piece m_j(lam) = m(lam) phi(2^{-j} lam).
cdouble eval_mj(const MultiplierSpec& spec, const DyadicWindow& w, int j, double lam);

// Smooth band truncation sum_{j=1..J} m_j = m(lam)(cap(2^{-J} lam) - cap(lam)).
cdouble eval_band(const MultiplierSpec& spec, const DyadicWindow& w, int J, double lam);

// The rescaled piece m^j(lam) = m(2^j lam) phi(lam) sampled on a symmetric
// line grid, with its Fourier transform and norms computed at construction.
class DyadicPiece {
 public:
  DyadicPiece(const MultiplierSpec& spec, const DyadicWindow& window, int j,
              const UniformGrid& grid);

  int j() const { return j_; }
  const SampledFunction& samples() const { return samples_; }
  const SampledFunction& transform() const { return transform_; }
  double sup_norm() const { return sup_; }
  double l2_norm() const { return l2_; }
  double sobolev(double s) const;

 private:
  static SampledFunction build(const MultiplierSpec& spec, const DyadicWindow& window, int j,
                               const UniformGrid& grid);
  int j_;
  SampledFunction samples_;
  SampledFunction transform_;
  double sup_;
  double l2_;
};

bool piece_resolvable(const MultiplierSpec& spec, int j, const UniformGrid& grid);

// [j_lo, j_hi] intersected with the resolvable set (contiguous since the
// frequency bound is monotone in j theta); nullopt if nothing survives.
std::optional<std::pair<int, int>> resolvable_j_range(const MultiplierSpec& spec, int j_lo,
                                                      int j_hi, const UniformGrid& grid);

// Boundedness heuristic for a finite norm sequence standing in for a sup over
// infinitely many j: values indexed by an escape variable x that increases
// toward the unbounded end of the range.
struct BoundednessCheck {
  double sup = 0.0;
  double slope = 0.0;  // fitted log2 slope vs x over the outer half
  double max_over_median = 1.0;
  bool bounded = true;     // slope <= +0.02 and max/median <= 10
  bool diverging = false;  // slope >= +0.10
};
BoundednessCheck judge_bounded(const std::vector<double>& escape,
                               const std::vector<double>& values);

struct ConditionNegReport {
  double s = 0.0;
  std::vector<int> js;  // the {j : j theta <= 0} subset actually computed
  std::vector<double> sobolev_norms;
  BoundednessCheck check;
};

struct ConditionPosReport {
  double s = 0.0;
  double beta = 0.0;
  std::vector<int> js;  // the {j : j theta > 0} subset actually computed
  std::vector<double> sup_norms;
  std::vector<double> sobolev_norms;
  double linf_slope = 0.0;     // fitted log2 ||m^j||_inf vs j, outer half
  double sobolev_slope = 0.0;  // fitted log2 ||m^j||_{L2_s} vs j, outer half
  BoundednessCheck linf_check;     // on 2^{j theta beta/2} ||m^j||_inf
  BoundednessCheck sobolev_check;  // on 2^{-j theta (2s-beta)/2} ||m^j||_{L2_s}
};

ConditionNegReport check_condition_neg(const MultiplierSpec& spec, const DyadicWindow& window,
                                       double s, int j_lo, int j_hi, const UniformGrid& grid);

ConditionPosReport check_condition_pos(const MultiplierSpec& spec, const DyadicWindow& window,
                                       double s, double beta, int j_lo, int j_hi,
                                       const UniformGrid& grid);

enum class Verdict { member, not_member, inconclusive };
const char* verdict_name(Verdict v);

struct ClassReport {
  double theta = 0.0;
  double beta = 0.0;
  double s = 0.0;
  int j_lo = 0, j_hi = 0;  // range actually used after resolution clipping
  bool clipped = false;
  std::vector<double> s_grid;
  ConditionNegReport neg;               // at exponent s
  std::vector<ConditionPosReport> pos;  // one per s' in s_grid
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  double class_constant = 0.0;  // max of all condition sups
};

// 8 log-spaced exponents in [max(0.1, s/4), s], ending exactly at s.
std::vector<double> default_s_grid(double s);

ClassReport class_membership(const MultiplierSpec& spec, const DyadicWindow& window, double theta,
                             double beta, double s, int j_lo, int j_hi, const UniformGrid& grid,
                             const std::vector<double>& s_grid = {});

struct ModulationFit {
  std::vector<double> ys;
  std::vector<double> constants;  // class constant of lambda^{iy} m per y
  double degree = 0.0;            // fitted slope of log2(constant) vs log2(1+|y|)
};

ModulationFit modulate_and_fit(const MultiplierSpec& spec, const DyadicWindow& window,
                               double theta, double beta, double s,
                               const std::vector<double>& ys, int j_lo, int j_hi,
                               const UniformGrid& grid);

// Index sets {j : j theta <= 0} and {j : j theta > 0} covering [j_lo, j_hi].
std::pair<std::vector<int>, std::vector<int>> split_small_large(const MultiplierSpec& spec,
                                                                int j_lo, int j_hi);

}  // namespace oscmult
