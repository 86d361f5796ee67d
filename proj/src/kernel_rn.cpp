// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/kernel_rn.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "oscmult/fit.hpp"
#include "oscmult/rng.hpp"

namespace oscmult {
namespace {

constexpr double kPi = 3.14159265358979323846;

double min_extent_of(const UniformGrid& g) {
  double m = g.axis(0).extent;
  for (int a = 1; a < g.dim(); ++a) m = std::min(m, g.axis(a).extent);
  return m;
}

// Largest spatial displacement of kernel mass: the phase derivative of m over
// [lo, hi] intersected with the cutoff support, plus log-modulation drift.
double position_bound(const MultiplierSpec& spec, double lo, double hi) {
  if (spec.cutoff() == Cutoff::chi_plus) lo = std::max(lo, 1.0);
  if (spec.cutoff() == Cutoff::chi_minus) hi = std::min(hi, 1.0);
  if (!(lo < hi)) return 0.0;
  double b = spec.modulation() / lo;
  const double th = spec.theta();
  if (th != 0.0) b += std::abs(th) * std::max(std::pow(lo, th - 1.0), std::pow(hi, th - 1.0));
  return b;
}

template <typename Fn>
void for_each_point(const UniformGrid& g, Fn&& fn) {
  const std::size_t n0 = g.axis(0).n;
  const std::size_t n1 = g.dim() > 1 ? g.axis(1).n : 1;
  const std::size_t n2 = g.dim() > 2 ? g.axis(2).n : 1;
  std::size_t idx = 0;
  for (std::size_t i2 = 0; i2 < n2; ++i2) {
    const double z = g.dim() > 2 ? g.coord(2, i2) : 0.0;
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      const double y = g.dim() > 1 ? g.coord(1, i1) : 0.0;
      for (std::size_t i0 = 0; i0 < n0; ++i0, ++idx) fn(idx, g.coord(0, i0), y, z);
    }
  }
}

double lp_norm(const SampledFunction& f, double p) {
  double acc = 0.0;
  for (const cdouble& v : f.values()) acc += std::pow(std::abs(v), p);
  return std::pow(f.grid().cell_volume() * acc, 1.0 / p);
}

// || (1 + |x|^2)^{s/2} K ||_2, the partner of cs_constant in the L1 chain.
double sobolev_weight_l2(const SampledFunction& K, double s) {
  double acc = 0.0;
  for_each_point(K.grid(), [&](std::size_t idx, double x, double y, double z) {
    acc += std::pow(1.0 + x * x + y * y + z * z, s) * std::norm(K.values()[idx]);
  });
  return std::sqrt(K.grid().cell_volume() * acc);
}

}  // namespace

RadialKernel kernel_of_radial_multiplier(const MultiplierSpec& spec, double lam_min,
                                         double lam_max, const UniformGrid& grid) {
  if (!(lam_min > 0.0) || !(lam_max > lam_min))
    throw std::invalid_argument("kernel truncation needs 0 < lam_min < lam_max");
  const UniformGrid freq = grid.frequency_grid();
  const double band_cap = min_extent_of(freq);
  if (lam_max > band_cap) {
    std::ostringstream os;
    os << "truncation top " << lam_max << " exceeds the resolved band " << band_cap;
    throw ResolutionError(os.str());
  }
  const double pos = position_bound(spec, lam_min, lam_max);
  const double room = 0.8 * min_extent_of(grid);
  if (pos > room) {
    std::ostringstream os;
    os << "kernel mass near radius " << pos << " spills past the grid (safe radius " << room
       << ")";
    throw ResolutionError(os.str());
  }
  SampledFunction M(freq);
  for_each_point(freq, [&](std::size_t idx, double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r < lam_min || r > lam_max) return;
    M.values()[idx] = spec.eval(r);
  });
  const double ml2 = M.l2();
  SampledFunction K = inverse_fourier(M);
  const double l1 = K.l1();
  const double l2 = K.l2();
  std::ostringstream os;
  os << spec.describe() << " on [" << lam_min << ", " << lam_max << "]";
  return RadialKernel{std::move(K), os.str(), l1, l2, ml2};
}

UniformGrid piece_kernel_grid(const MultiplierSpec& spec, int j, double min_extent,
                              double spacing) {
  if (!(spacing > 0.0) || spacing > 0.4 * kPi)
    throw std::invalid_argument("piece kernel spacing must resolve the [1/2, 2] band");
  if (!(min_extent > 0.0)) throw std::invalid_argument("min_extent must be positive");
  const double need = std::max({16.0, min_extent, 1.25 * spec.frequency_bound(j)});
  double extent = 16.0;
  while (extent < need) extent *= 2.0;
  const double cells = 2.0 * extent / spacing;
  std::size_t n = 16;
  while (static_cast<double>(n) < cells - 0.5) n *= 2;
  if (n > (std::size_t{1} << 26)) throw ResolutionError("piece kernel grid would exceed 2^26 points");
  return UniformGrid::line(extent, n);
}

RadialKernel piece_kernel_line(const MultiplierSpec& spec, const DyadicWindow& w, int j,
                               const UniformGrid& grid) {
  if (grid.dim() != 1) throw std::invalid_argument("piece kernels live on line grids");
  const UniformGrid freq = grid.frequency_grid();
  if (freq.axis(0).extent < 2.5)
    throw ResolutionError("grid spacing too coarse for the [1/2, 2] band");
  const double fb = spec.frequency_bound(j);
  if (fb > 0.8 * grid.axis(0).extent) {
    std::ostringstream os;
    os << "piece j=" << j << " reaches radius " << fb << " but the grid stops at "
       << grid.axis(0).extent;
    throw ResolutionError(os.str());
  }
  const double scale = std::ldexp(1.0, j);
  SampledFunction M(freq);
  for_each_point(freq, [&](std::size_t idx, double x, double, double) {
    const double r = std::abs(x);
    if (r < 0.5 || r > 2.0) return;
    const double ph = w.phi(r);
    if (ph == 0.0) return;
    const cdouble v = ph * spec.eval(scale * r);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "piece j=" << j << " produced a non-finite sample at lambda=" << scale * r;
      throw std::runtime_error(os.str());
    }
    M.values()[idx] = v;
  });
  const double ml2 = M.l2();
  SampledFunction K = inverse_fourier(M);
  const double l1 = K.l1();
  const double l2 = K.l2();
  std::ostringstream os;
  os << "piece j=" << j << " of " << spec.describe();
  return RadialKernel{std::move(K), os.str(), l1, l2, ml2};
}

double cs_constant(const UniformGrid& grid, double s) {
  double acc = 0.0;
  for_each_point(grid, [&](std::size_t, double x, double y, double z) {
    acc += std::pow(1.0 + x * x + y * y + z * z, -s);
  });
  return std::sqrt(grid.cell_volume() * acc);
}

double cs_tail_constant(const UniformGrid& grid, double s, double r, AmbientNorm norm) {
  double acc = 0.0;
  for_each_point(grid, [&](std::size_t, double x, double y, double z) {
    const double pn = point_norm(norm, x, y, z, grid.dim());
    if (pn < r) return;
    const double wgt = 1.0 + std::pow(pn, s);
    acc += 1.0 / (wgt * wgt);
  });
  return std::sqrt(grid.cell_volume() * acc);
}

KeyEstimate key_estimate_ratio(const SampledFunction& F, double s) {
  if (F.grid().dim() != 1) throw std::invalid_argument("key estimate runs on line grids");
  const double sob = sobolev_norm(F, s);
  const SampledFunction K = inverse_fourier(F);
  KeyEstimate out;
  out.kernel_l1 = K.l1();
  out.sobolev = sob;
  out.constant = cs_constant(K.grid(), s);
  out.ratio = sob > 0.0 ? out.kernel_l1 / sob : 0.0;
  out.within = out.kernel_l1 <= out.constant * sob * (1.0 + 1e-9) + 1e-300;
  return out;
}

LargePartL1 large_part_l1(const MultiplierSpec& spec, const DyadicWindow& w, double s_prime,
                          int j_max) {
  const double th = spec.theta();
  if (th == 0.0) throw std::invalid_argument("theta = 0 has no large-frequency track");
  const double beta = spec.beta();
  if (!(beta > 1.0)) throw std::invalid_argument("beta <= 1 leaves no admissible s' on the line");
  if (!(s_prime > 0.5) || !(s_prime < beta / 2.0))
    throw std::invalid_argument("s' must lie in (1/2, beta/2)");
  if (j_max < 2) throw std::invalid_argument("need at least two pieces");

  LargePartL1 out;
  out.s_prime = s_prime;
  out.expected_rate = std::abs(th) * (beta - 2.0 * s_prime) / 2.0;
  const int dir = th > 0.0 ? 1 : -1;
  std::vector<double> xs, l1s, bounds;
  double run = 0.0;
  for (int k = 1; k <= j_max; ++k) {
    const int j = dir * k;
    const UniformGrid g = piece_kernel_grid(spec, j);
    const RadialKernel K = piece_kernel_line(spec, w, j, g);
    const double bound = cs_constant(g, s_prime) * sobolev_weight_l2(K.values, s_prime);
    run += K.l1;
    out.rows.push_back({j, K.l1, bound, run});
    xs.push_back(static_cast<double>(k));
    l1s.push_back(K.l1);
    bounds.push_back(bound);
  }
  out.rate_bound = -fit_log2_outer_half(xs, bounds).slope;
  out.rate_actual = -fit_log2_outer_half(xs, l1s).slope;
  const double s_last = out.rows.back().partial_sum;
  const double s_prev = out.rows[out.rows.size() - 2].partial_sum;
  out.cauchy_tail = std::abs(s_last - s_prev) / s_last;
  return out;
}

FsCondition fefferman_stein_condition(const RadialKernel& K, double theta,
                                      const std::vector<double>& ys) {
  const UniformGrid& g = K.values.grid();
  const double h0 = g.spacing(0);
  const std::size_t n0 = g.axis(0).n;
  const auto& v = K.values.values();
  FsCondition out;
  for (const double y : ys) {
    if (!(y > 0.0) || y > 1.0)
      throw std::invalid_argument("fs condition samples need 0 < y <= 1");
    const auto sh = static_cast<std::size_t>(std::llround(y / h0));
    if (sh < 1) throw std::invalid_argument("fs condition y sits below the grid spacing");
    const double ya = static_cast<double>(sh) * h0;
    const double cut = 2.0 * std::pow(ya, 1.0 - theta);
    double acc = 0.0;
    for_each_point(g, [&](std::size_t idx, double x, double yy, double zz) {
      if (point_norm(AmbientNorm::euclidean, x, yy, zz, g.dim()) <= cut) return;
      const std::size_t i0 = idx % n0;
      const cdouble shifted = i0 >= sh ? v[idx - sh] : cdouble(0.0, 0.0);
      acc += std::abs(shifted - v[idx]);
    });
    out.ys.push_back(ya);
    out.values.push_back(g.cell_volume() * acc);
    out.sup = std::max(out.sup, out.values.back());
  }
  return out;
}

SampledFunction hl_maximal(const SampledFunction& f) {
  const UniformGrid& g = f.grid();
  if (g.dim() > 2) throw std::invalid_argument("maximal function runs on dim <= 2 grids");
  SampledFunction absf(g);
  for (std::size_t i = 0; i < f.values().size(); ++i) absf.values()[i] = std::abs(f.values()[i]);
  const SampledFunction F = fourier(absf);
  const double h0 = g.spacing(0);
  const double rmax = min_extent_of(g) / 4.0;
  std::vector<double> radii;
  for (double r = h0; r <= rmax * (1.0 + 1e-12); r *= 2.0) radii.push_back(r);
  if (radii.empty()) throw std::invalid_argument("grid too small for a dyadic radius");
  const double scale = std::pow(2.0 * kPi, 0.5 * g.dim());
  SampledFunction out(g);
  SampledFunction prod(F.grid());
  for (const double r : radii) {
    const SampledFunction chi = SampledFunction::sample(g, [r](double x, double y, double z) {
      return x * x + y * y + z * z <= r * r ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0);
    });
    const SampledFunction Chi = fourier(chi);
    for (std::size_t i = 0; i < prod.values().size(); ++i)
      prod.values()[i] = F.values()[i] * Chi.values()[i];
    const SampledFunction conv = inverse_fourier(prod);
    const double weight = scale / std::pow(r, g.dim());
    for (std::size_t i = 0; i < out.values().size(); ++i) {
      const double cand = conv.values()[i].real() * weight;
      if (cand > out.values()[i].real()) out.values()[i] = cand;
    }
  }
  return out;
}

FsMaximalCheck fs_maximal_inequality(const std::vector<SampledFunction>& indicators) {
  if (indicators.empty()) throw std::invalid_argument("need at least one indicator");
  const UniformGrid& g = indicators.front().grid();
  double lhs = 0.0, rhs = 0.0;
  for (const auto& chi : indicators) {
    if (!chi.grid().same_shape(g)) throw std::invalid_argument("indicators on mismatched grids");
    const SampledFunction M = hl_maximal(chi);
    for (std::size_t i = 0; i < M.values().size(); ++i) {
      const double m = M.values()[i].real();
      lhs += m * m;
      rhs += std::norm(chi.values()[i]);
    }
  }
  FsMaximalCheck out;
  out.lhs = std::sqrt(g.cell_volume() * lhs);
  out.rhs = std::sqrt(g.cell_volume() * rhs);
  out.constant = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
  return out;
}

MaxCharComparison max_char_comparison(double radius, const UniformGrid& grid) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  const SampledFunction ball =
      SampledFunction::sample(grid, [radius](double x, double y, double z) {
        return x * x + y * y + z * z <= radius * radius ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0);
      });
  const SampledFunction M = hl_maximal(ball);
  const double window = min_extent_of(grid) / 8.0;
  MaxCharComparison out;
  out.c_min = std::numeric_limits<double>::infinity();
  for_each_point(grid, [&](std::size_t idx, double x, double y, double z) {
    const double d = std::sqrt(x * x + y * y + z * z);
    if (d > window) return;
    const double v = M.values()[idx].real() * std::pow(1.0 + d / radius, grid.dim());
    out.c_min = std::min(out.c_min, v);
    out.c_max = std::max(out.c_max, v);
  });
  return out;
}

SampledFunction band_multiplier(const MultiplierSpec& spec, const DyadicWindow& w, int J,
                                const UniformGrid& grid) {
  if (J < 1) throw std::invalid_argument("band truncation needs J >= 1");
  const UniformGrid freq = grid.frequency_grid();
  const double top = std::ldexp(1.0, J + 1);
  if (top > min_extent_of(freq)) {
    std::ostringstream os;
    os << "band top " << top << " exceeds the resolved band " << min_extent_of(freq);
    throw ResolutionError(os.str());
  }
  const double pos = position_bound(spec, 1.0, top);
  if (pos > 0.8 * min_extent_of(grid)) {
    std::ostringstream os;
    os << "banded kernel mass near radius " << pos << " spills past the grid";
    throw ResolutionError(os.str());
  }
  SampledFunction M(freq);
  for_each_point(freq, [&](std::size_t idx, double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r <= 0.0) return;
    M.values()[idx] = eval_band(spec, w, J, r);
  });
  return M;
}

SampledFunction apply_multiplier(const SampledFunction& M, const SampledFunction& f) {
  SampledFunction F = fourier(f);
  if (!M.grid().same_shape(F.grid()))
    throw std::invalid_argument("multiplier samples do not live on the frequency grid of f");
  for (std::size_t i = 0; i < F.values().size(); ++i) F.values()[i] *= M.values()[i];
  return inverse_fourier(F);
}

LpScan lp_scan(const MultiplierSpec& spec, const DyadicWindow& w,
               const std::vector<double>& p_grid, const std::vector<int>& ladder,
               std::uint64_t seed) {
  if (ladder.empty()) throw std::invalid_argument("empty truncation ladder");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1]) throw std::invalid_argument("ladder must increase");
  if (p_grid.empty()) throw std::invalid_argument("empty p grid");
  for (const double p : p_grid)
    if (!(p > 1.0)) throw std::invalid_argument("lp scan needs p > 1");

  const double X = 64.0;
  Rng rng(seed);
  std::vector<double> cs, ws, sg;
  for (int b = 0; b < 8; ++b) {
    cs.push_back(rng.uniform(-16.0, 16.0));
    ws.push_back(rng.uniform(0.5, 4.0));
    sg.push_back(rng.uniform() < 0.5 ? -1.0 : 1.0);
  }

  LpScan out;
  out.ladder = ladder;
  out.rows.resize(p_grid.size());
  for (std::size_t i = 0; i < p_grid.size(); ++i) out.rows[i].p = p_grid[i];

  for (const int J : ladder) {
    const double target = 1.25 * std::ldexp(1.0, J + 1);
    std::size_t N = 16;
    while (kPi * static_cast<double>(N) / (2.0 * X) < target) N *= 2;
    const UniformGrid g = UniformGrid::line(X, N);
    const SampledFunction M = band_multiplier(spec, w, J, g);
    const SampledFunction K = inverse_fourier(M);

    double max_m = 0.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < M.values().size(); ++i) {
      const double a = std::abs(M.values()[i]);
      if (a > max_m) {
        max_m = a;
        arg = i;
      }
    }
    out.resolved_max.push_back(max_m);
    const double xi_star = M.grid().coord(0, arg);

    std::vector<SampledFunction> inputs;
    inputs.push_back(SampledFunction::sample(
        g, [](double x, double, double) { return cdouble(std::exp(-x * x / 64.0), 0.0); }));
    inputs.push_back(SampledFunction::sample(g, [xi_star](double x, double, double) {
      return std::exp(cdouble(0.0, xi_star * x)) * std::exp(-x * x / 64.0);
    }));
    {
      SampledFunction spike(g);
      spike.values()[g.axis(0).n / 2] = 1.0;
      inputs.push_back(std::move(spike));
    }
    inputs.push_back(SampledFunction::sample(g, [&cs, &ws, &sg](double x, double, double) {
      double acc = 0.0;
      for (int b = 0; b < 8; ++b) {
        const double u = (x - cs[static_cast<std::size_t>(b)]) / ws[static_cast<std::size_t>(b)];
        acc += sg[static_cast<std::size_t>(b)] * std::exp(-u * u);
      }
      return cdouble(acc, 0.0);
    }));

    std::vector<SampledFunction> images;
    images.reserve(inputs.size());
    for (const auto& f : inputs) images.push_back(apply_multiplier(M, f));

    for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
      const double p = p_grid[pi];
      double bound = 0.0;
      for (std::size_t k = 0; k < inputs.size(); ++k) {
        const double den = lp_norm(inputs[k], p);
        if (den > 0.0) bound = std::max(bound, lp_norm(images[k], p) / den);
      }
      // kernel-shaped extremizer: f(x) = |K(-x)|^{p'-1} phase so that T f peaks at 0
      const double pp = p / (p - 1.0);
      SampledFunction fk(g);
      const std::size_t n = g.axis(0).n;
      for (std::size_t i = 0; i < n; ++i) {
        const cdouble kv = K.values()[i == 0 ? 0 : n - i];
        const double a = std::abs(kv);
        if (a > 0.0) fk.values()[i] = std::pow(a, pp - 1.0) * (std::conj(kv) / a);
      }
      const double den = lp_norm(fk, p);
      if (den > 0.0) bound = std::max(bound, lp_norm(apply_multiplier(M, fk), p) / den);
      if (!(bound > 0.0)) throw std::runtime_error("lp scan produced a vanishing lower bound");
      out.rows[pi].lower_bounds.push_back(bound);
    }
  }

  for (auto& row : out.rows) {
    if (ladder.size() >= 2) {
      std::vector<double> xs, ys;
      for (std::size_t r = 0; r < ladder.size(); ++r) {
        xs.push_back(static_cast<double>(ladder[r]));
        ys.push_back(std::log2(row.lower_bounds[r]));
      }
      row.exponent = fit_line(xs, ys).slope;
    }
    row.verdict = row.exponent >= 0.02 ? "growing" : "stable";
  }
  return out;
}

}  // namespace oscmult
