// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oscmult/fit.hpp"
#include "oscmult/transforms.hpp"

namespace oscmult {

UniformGrid default_piece_grid() { return UniformGrid::line(8.0, std::size_t{1} << 15); }

cdouble eval_mj(const MultiplierSpec& spec, const DyadicWindow& w, int j, double lam) {
  const double phi = w.phi(std::ldexp(lam, -j));
  return phi == 0.0 ? cdouble(0.0) : phi * spec.eval(lam);
}

cdouble eval_band(const MultiplierSpec& spec, const DyadicWindow& w, int J, double lam) {
  const double win = w.cap(std::ldexp(lam, -J)) - w.cap(lam);
  return win == 0.0 ? cdouble(0.0) : win * spec.eval(lam);
}

namespace {

void validate_piece_grid(const UniformGrid& grid) {
  if (grid.dim() != 1) throw std::invalid_argument("piece grid must be one-dimensional");
  if (grid.axis(0).extent < 4.0)
    throw std::invalid_argument("piece grid must cover [1/4, 4]");
  if (grid.spacing(0) > 3.75 / 256.0)
    throw std::invalid_argument("piece grid needs at least 2^8 points across [1/4, 4]");
}

double safe_band(const UniformGrid& grid) { return 0.8 * std::numbers::pi / grid.spacing(0); }

}  // namespace

SampledFunction DyadicPiece::build(const MultiplierSpec& spec, const DyadicWindow& window, int j,
                                   const UniformGrid& grid) {
  validate_piece_grid(grid);
  const double fb = spec.frequency_bound(j);
  const double band = safe_band(grid);
  if (fb > band) {
    std::ostringstream os;
    os << "piece j=" << j << " of " << spec.describe() << " has frequency bound " << fb
       << " beyond the grid's safe band " << band;
    throw ResolutionError(os.str());
  }
  SampledFunction f(grid);
  const std::size_t n = grid.axis(0).n;
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = grid.coord(0, i);
    const double phi = window.phi(lam);
    if (phi == 0.0) continue;
    const cdouble v = phi * spec.eval(std::ldexp(lam, j));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "piece j=" << j << ": evaluator non-finite at lambda=" << lam;
      throw std::runtime_error(os.str());
    }
    f.values()[i] = v;
  }
  return f;
}

DyadicPiece::DyadicPiece(const MultiplierSpec& spec, const DyadicWindow& window, int j,
                         const UniformGrid& grid)
    : j_(j),
      samples_(build(spec, window, j, grid)),
      transform_(fourier(samples_)),
      sup_(samples_.max_abs()),
      l2_(samples_.l2()) {}

double DyadicPiece::sobolev(double s) const { return sobolev_norm_given_transform(transform_, s); }

bool piece_resolvable(const MultiplierSpec& spec, int j, const UniformGrid& grid) {
  return spec.frequency_bound(j) <= safe_band(grid);
}

std::optional<std::pair<int, int>> resolvable_j_range(const MultiplierSpec& spec, int j_lo,
                                                      int j_hi, const UniformGrid& grid) {
  int lo = j_lo;
  while (lo <= j_hi && !piece_resolvable(spec, lo, grid)) ++lo;
  int hi = j_hi;
  while (hi >= lo && !piece_resolvable(spec, hi, grid)) --hi;
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

BoundednessCheck judge_bounded(const std::vector<double>& escape,
                               const std::vector<double>& values) {
  BoundednessCheck c;
  std::vector<double> xs, vs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    c.sup = std::max(c.sup, values[i]);
    if (values[i] > 0.0) {
      xs.push_back(escape[i]);
      vs.push_back(values[i]);
    }
  }
  if (vs.size() >= 2) {
    c.slope = fit_log2_outer_half(xs, vs).slope;
    c.max_over_median = *std::max_element(vs.begin(), vs.end()) / median(vs);
  }
  c.bounded = c.slope <= 0.02 && c.max_over_median <= 10.0;
  c.diverging = c.slope >= 0.10;
  return c;
}

namespace {

// Escape variables (toward the unbounded end) in per-j units.
double escape_neg(double theta, int j) {
  if (theta > 0.0) return -static_cast<double>(j);
  if (theta < 0.0) return static_cast<double>(j);
  return std::fabs(static_cast<double>(j));
}

double escape_pos(double theta, int j) {
  return theta > 0.0 ? static_cast<double>(j) : -static_cast<double>(j);
}

std::vector<double> js_as_doubles(const std::vector<int>& js) {
  std::vector<double> x(js.size());
  for (std::size_t i = 0; i < js.size(); ++i) x[i] = js[i];
  return x;
}

}  // namespace

namespace {

ConditionNegReport condition_neg_from_pieces(const std::vector<DyadicPiece>& pieces, double theta,
                                             double s) {
  ConditionNegReport r;
  r.s = s;
  std::vector<double> escape;
  for (const auto& piece : pieces) {
    if (static_cast<double>(piece.j()) * theta > 0.0) continue;
    r.js.push_back(piece.j());
    r.sobolev_norms.push_back(piece.sobolev(s));
    escape.push_back(escape_neg(theta, piece.j()));
  }
  r.check = judge_bounded(escape, r.sobolev_norms);
  return r;
}

ConditionPosReport condition_pos_from_pieces(const std::vector<DyadicPiece>& pieces, double theta,
                                             double s, double beta) {
  ConditionPosReport r;
  r.s = s;
  r.beta = beta;
  std::vector<double> escape, linf_scaled, sob_scaled;
  for (const auto& piece : pieces) {
    const double jt = static_cast<double>(piece.j()) * theta;
    if (!(jt > 0.0)) continue;
    r.js.push_back(piece.j());
    r.sup_norms.push_back(piece.sup_norm());
    r.sobolev_norms.push_back(piece.sobolev(s));
    escape.push_back(escape_pos(theta, piece.j()));
    linf_scaled.push_back(std::exp2(jt * beta / 2.0) * r.sup_norms.back());
    sob_scaled.push_back(std::exp2(-jt * (2.0 * s - beta) / 2.0) * r.sobolev_norms.back());
  }
  r.linf_check = judge_bounded(escape, linf_scaled);
  r.sobolev_check = judge_bounded(escape, sob_scaled);
  if (r.js.size() >= 2) {
    const auto xs = js_as_doubles(r.js);
    auto positive = [](const std::vector<double>& v) {
      return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
    };
    if (positive(r.sup_norms)) r.linf_slope = fit_log2_outer_half(xs, r.sup_norms).slope;
    if (positive(r.sobolev_norms))
      r.sobolev_slope = fit_log2_outer_half(xs, r.sobolev_norms).slope;
  }
  return r;
}

std::vector<DyadicPiece> build_pieces(const MultiplierSpec& spec, const DyadicWindow& window,
                                      int j_lo, int j_hi, const UniformGrid& grid) {
  std::vector<DyadicPiece> pieces;
  pieces.reserve(static_cast<std::size_t>(j_hi - j_lo + 1));
  for (int j = j_lo; j <= j_hi; ++j) pieces.emplace_back(spec, window, j, grid);
  return pieces;
}

}  // namespace

ConditionNegReport check_condition_neg(const MultiplierSpec& spec, const DyadicWindow& window,
                                       double s, int j_lo, int j_hi, const UniformGrid& grid) {
  ConditionNegReport r;
  r.s = s;
  const double theta = spec.theta();
  std::vector<double> escape;
  for (int j = j_lo; j <= j_hi; ++j) {
    if (static_cast<double>(j) * theta > 0.0) continue;
    DyadicPiece piece(spec, window, j, grid);
    r.js.push_back(j);
    r.sobolev_norms.push_back(piece.sobolev(s));
    escape.push_back(escape_neg(theta, j));
  }
  r.check = judge_bounded(escape, r.sobolev_norms);
  return r;
}

ConditionPosReport check_condition_pos(const MultiplierSpec& spec, const DyadicWindow& window,
                                       double s, double beta, int j_lo, int j_hi,
                                       const UniformGrid& grid) {
  std::vector<DyadicPiece> pieces;
  const double theta = spec.theta();
  for (int j = j_lo; j <= j_hi; ++j)
    if (static_cast<double>(j) * theta > 0.0) pieces.emplace_back(spec, window, j, grid);
  return condition_pos_from_pieces(pieces, theta, s, beta);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::member:
      return "member";
    case Verdict::not_member:
      return "not_member";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::vector<double> default_s_grid(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("class exponent s must be positive");
  const double lo = std::max(0.1, s / 4.0);
  std::vector<double> g;
  const int count = 8;
  for (int i = 0; i < count; ++i)
    g.push_back(lo * std::pow(s / lo, static_cast<double>(i) / (count - 1)));
  g.back() = s;
  return g;
}

ClassReport class_membership(const MultiplierSpec& spec, const DyadicWindow& window, double theta,
                             double beta, double s, int j_lo, int j_hi, const UniformGrid& grid,
                             const std::vector<double>& s_grid) {
  ClassReport rep;
  rep.theta = theta;
  rep.beta = beta;
  rep.s = s;
  rep.s_grid = s_grid.empty() ? default_s_grid(s) : s_grid;
  for (double sp : rep.s_grid)
    if (sp > s || sp <= 0.0)
      throw std::invalid_argument("s_grid entries must lie in (0, s]");

  const auto range = resolvable_j_range(spec, j_lo, j_hi, grid);
  if (!range) {
    rep.j_lo = j_lo;
    rep.j_hi = j_hi;
    rep.clipped = true;
    rep.verdict = Verdict::inconclusive;
    rep.reason = "no resolvable j in the requested range";
    return rep;
  }
  rep.j_lo = range->first;
  rep.j_hi = range->second;
  rep.clipped = rep.j_lo != j_lo || rep.j_hi != j_hi;

  const auto pieces = build_pieces(spec, window, rep.j_lo, rep.j_hi, grid);
  rep.neg = condition_neg_from_pieces(pieces, spec.theta(), s);
  rep.class_constant = rep.neg.check.sup;
  bool all_bounded = rep.neg.check.bounded;
  bool any_diverging = rep.neg.check.diverging;
  for (double sp : rep.s_grid) {
    rep.pos.push_back(condition_pos_from_pieces(pieces, spec.theta(), sp, beta));
    const auto& p = rep.pos.back();
    all_bounded = all_bounded && p.linf_check.bounded && p.sobolev_check.bounded;
    any_diverging = any_diverging || p.linf_check.diverging || p.sobolev_check.diverging;
    rep.class_constant =
        std::max({rep.class_constant, p.linf_check.sup, p.sobolev_check.sup});
  }

  std::ostringstream why;
  if (any_diverging) {
    rep.verdict = Verdict::not_member;
    why << "a condition sequence grows with log2 slope >= 0.10";
  } else if (all_bounded) {
    rep.verdict = Verdict::member;
    why << "all condition sequences flat (slope <= 0.02, max/median <= 10)";
  } else {
    rep.verdict = Verdict::inconclusive;
    why << "some condition sequence drifts inside the tolerance band";
  }
  if (rep.clipped) why << "; j range clipped to [" << rep.j_lo << ", " << rep.j_hi << "]";
  rep.reason = why.str();
  return rep;
}

ModulationFit modulate_and_fit(const MultiplierSpec& spec, const DyadicWindow& window,
                               double theta, double beta, double s,
                               const std::vector<double>& ys, int j_lo, int j_hi,
                               const UniformGrid& grid) {
  if (ys.size() < 4) throw std::invalid_argument("modulate_and_fit needs at least 4 y values");
  ModulationFit fit;
  std::vector<double> logx;
  for (double y : ys) {
    const auto rep = class_membership(MultiplierSpec::modulated(spec, y), window, theta, beta, s,
                                      j_lo, j_hi, grid);
    fit.ys.push_back(y);
    fit.constants.push_back(rep.class_constant);
    logx.push_back(std::log2(1.0 + std::fabs(y)));
  }
  fit.degree = fit_log2(logx, fit.constants).slope;
  return fit;
}

std::pair<std::vector<int>, std::vector<int>> split_small_large(const MultiplierSpec& spec,
                                                                int j_lo, int j_hi) {
  std::pair<std::vector<int>, std::vector<int>> out;
  for (int j = j_lo; j <= j_hi; ++j) {
    if (static_cast<double>(j) * spec.theta() > 0.0)
      out.second.push_back(j);
    else
      out.first.push_back(j);
  }
  return out;
}

}  // namespace oscmult
