// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/multiplier.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "oscmult/window.hpp"

namespace oscmult {

namespace {

Cutoff auto_cutoff(double theta) {
  if (theta > 0.0) return Cutoff::chi_plus;
  if (theta < 0.0) return Cutoff::chi_minus;
  return Cutoff::none;
}

double cutoff_factor(Cutoff c, double lam) {
  switch (c) {
    case Cutoff::chi_plus:
      return chi_plus(lam);
    case Cutoff::chi_minus:
      return chi_minus(lam);
    case Cutoff::none:
      return 1.0;
  }
  return 1.0;
}

void reject_wave_case(double theta) {
  if (theta == 1.0) throw std::invalid_argument("theta = 1 (wave case) is not supported");
}

}  // namespace

MultiplierSpec MultiplierSpec::oscillating(double theta, double beta) {
  reject_wave_case(theta);
  MultiplierSpec m;
  m.kind_ = "oscillating";
  m.params_ = {{"theta", theta}, {"beta", beta}};
  m.theta_ = theta;
  m.beta_ = beta;
  m.cutoff_ = auto_cutoff(theta);
  const Cutoff c = m.cutoff_;
  m.eval_ = [theta, beta, c](double lam) -> cdouble {
    const double w = cutoff_factor(c, lam);
    if (w == 0.0) return 0.0;
    const double amp = w * std::pow(lam, -theta * beta / 2.0);
    const double phase = std::pow(lam, theta);
    return amp * cdouble(std::cos(phase), std::sin(phase));
  };
  return m;
}

MultiplierSpec MultiplierSpec::hardy_strong(double a, double b, int n) {
  if (!(a > 0.0)) throw std::invalid_argument("hardy_strong needs a > 0");
  if (n < 1) throw std::invalid_argument("hardy_strong needs n >= 1");
  const double theta = a / (1.0 + a);
  const double beta = ((2.0 + a) * n - 2.0 * b) / a;
  MultiplierSpec m = oscillating(theta, beta);
  m.kind_ = "hardy_strong";
  m.params_ = {{"a", a}, {"b", b}, {"n", static_cast<double>(n)}};
  return m;
}

MultiplierSpec MultiplierSpec::modulated(MultiplierSpec base, double y) {
  MultiplierSpec m;
  m.kind_ = "modulated(" + base.kind_ + ")";
  m.params_ = base.params_;
  m.params_.emplace_back("y", y);
  m.theta_ = base.theta_;
  m.beta_ = base.beta_;
  m.cutoff_ = base.cutoff_;
  m.modulation_ = base.modulation_ + std::fabs(y);
  m.eval_ = [base = std::move(base), y](double lam) -> cdouble {
    const double phase = y * std::log(lam);
    return base.eval(lam) * cdouble(std::cos(phase), std::sin(phase));
  };
  return m;
}

MultiplierSpec MultiplierSpec::analytic_family(MultiplierSpec base, double delta, cdouble z,
                                               double dim) {
  if (!(delta > 0.0)) throw std::invalid_argument("analytic_family needs delta > 0");
  if (z.real() < 0.0 || z.real() > 1.0)
    throw std::invalid_argument("analytic_family needs Re z in [0, 1]");
  MultiplierSpec m;
  m.kind_ = "analytic_family(" + base.kind_ + ")";
  m.params_ = base.params_;
  m.params_.emplace_back("delta", delta);
  m.params_.emplace_back("re_z", z.real());
  m.params_.emplace_back("im_z", z.imag());
  m.params_.emplace_back("dim", dim);
  const double theta = base.theta_;
  const cdouble expo = (theta / 2.0) * (base.beta_ - (dim + delta) * z);
  m.theta_ = theta;
  m.beta_ = (dim + delta) * z.real();
  m.cutoff_ = base.cutoff_;
  m.modulation_ = base.modulation_ + std::fabs(expo.imag());
  m.eval_ = [base = std::move(base), expo](double lam) -> cdouble {
    const cdouble b = base.eval(lam);
    if (b == cdouble(0.0)) return 0.0;
    return std::exp(expo * std::log(lam)) * b;
  };
  return m;
}

MultiplierSpec MultiplierSpec::custom(std::function<cdouble(double)> evaluator, double theta,
                                      double beta) {
  return custom(std::move(evaluator), theta, beta, auto_cutoff(theta));
}

MultiplierSpec MultiplierSpec::custom(std::function<cdouble(double)> evaluator, double theta,
                                      double beta, Cutoff cutoff) {
  reject_wave_case(theta);
  MultiplierSpec m;
  m.kind_ = "custom";
  m.params_ = {{"theta", theta}, {"beta", beta}};
  m.theta_ = theta;
  m.beta_ = beta;
  m.cutoff_ = cutoff;
  m.eval_ = [fn = std::move(evaluator), cutoff](double lam) -> cdouble {
    const double w = cutoff_factor(cutoff, lam);
    return w == 0.0 ? cdouble(0.0) : w * fn(lam);
  };
  return m;
}

cdouble MultiplierSpec::eval(double lambda) const {
  if (!(lambda > 0.0)) throw std::domain_error("multiplier evaluated at lambda <= 0");
  return eval_(lambda);
}

std::string MultiplierSpec::describe() const {
  std::ostringstream os;
  os << kind_ << "(";
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i) os << ", ";
    os << params_[i].first << "=" << params_[i].second;
  }
  os << ")";
  return os.str();
}

double MultiplierSpec::frequency_bound(int j) const {
  // phase of m(2^j lam) is (2^j lam)^theta: |d/dlam| <= |theta| 2^{j theta} 2^{|theta-1|}
  // on [1/2, 2]; amplitude log-derivative <= |theta beta|; modulation factors
  // lambda^{iy} contribute |y|/lam <= 2|y|; the window itself is low-frequency,
  // covered by the additive constant.
  const double osc =
      std::fabs(theta_) * std::pow(2.0, static_cast<double>(j) * theta_ + std::fabs(theta_ - 1.0));
  return osc + std::fabs(theta_ * beta_) + 2.0 * modulation_ + 16.0;
}

double boundedness_threshold(double a, int n) {
  if (!(a > 0.0)) throw std::invalid_argument("boundedness_threshold needs a > 0");
  if (n < 1) throw std::invalid_argument("boundedness_threshold needs n >= 1");
  return n * (2.0 + a) / 2.0;
}

}  // namespace oscmult
