// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "oscmult/grid.hpp"

namespace oscmult {

enum class Cutoff { chi_plus, chi_minus, none };

// A spectral multiplier lambda -> m(lambda) on (0, infinity). The canonical
// family is oscillating(theta, beta): e^{i lambda^theta} lambda^{-theta beta/2}
// times the cutoff matching the sign of theta (chi_plus kills lambda <= 1 for
// theta > 0, chi_minus kills lambda >= 1 for theta < 0, none for theta = 0).
class MultiplierSpec {
 public:
  static MultiplierSpec oscillating(double theta, double beta);
  // Boundary-oscillation kernel parameters (a, b) in dimension n, mapped to
  // theta = a/(1+a), beta = ((2+a) n - 2 b)/a.
  static MultiplierSpec hardy_strong(double a, double b, int n);
  // lambda^{iy} m(lambda)
  static MultiplierSpec modulated(MultiplierSpec base, double y);
  // lambda^{(theta/2)(beta - (dim+delta) z)} m(lambda); at z = 0 this is
  // lambda^{theta beta/2} m(lambda), and |m_z| decays with effective
  // beta = (dim+delta) Re z.
  static MultiplierSpec analytic_family(MultiplierSpec base, double delta, cdouble z, double dim);
  // Arbitrary evaluator with declared exponents; the cutoff matching the
  // declared theta is applied on top unless overridden.
  static MultiplierSpec custom(std::function<cdouble(double)> evaluator, double theta,
                               double beta);
  static MultiplierSpec custom(std::function<cdouble(double)> evaluator, double theta,
                               double beta, Cutoff cutoff);

  cdouble eval(double lambda) const;

  double theta() const { return theta_; }
  double beta() const { return beta_; }  // exponent of the modulus decay
  Cutoff cutoff() const { return cutoff_; }
  // total coefficient of log-modulation lambda^{iy} factors, for Nyquist checks
  double modulation() const { return modulation_; }
  const std::string& kind() const { return kind_; }
  const std::vector<std::pair<std::string, double>>& params() const { return params_; }
  std::string describe() const;

  // Upper bound on the instantaneous frequency of lambda -> m(2^j lambda)
  // over supp phi = [1/2, 2].
  double frequency_bound(int j) const;

 private:
  MultiplierSpec() = default;
  std::string kind_;
  std::vector<std::pair<std::string, double>> params_;
  double theta_ = 0.0;
  double beta_ = 0.0;
  Cutoff cutoff_ = Cutoff::none;
  double modulation_ = 0.0;
  std::function<cdouble(double)> eval_;
};

// n(2+a)/2: the b beyond which the hardy_strong multiplier is unbounded
// (derived beta < 0); equality is exactly beta = 0.
double boundedness_threshold(double a, int n);

}  // namespace oscmult
