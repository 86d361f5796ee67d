// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "oscmult/dyadic.hpp"
#include "oscmult/fit.hpp"
#include "oscmult/rng.hpp"
#include "oscmult/simd.hpp"

namespace oscmult {

namespace {

constexpr double kPi = std::numbers::pi;

struct RadialTable {
  std::vector<double> rho2;       // sorted unique x^2 + y^2 over the plane
  std::vector<std::size_t> slot;  // i1 * n0 + i0 -> index into rho2
};

RadialTable radial_table(const UniformGrid& g) {
  const std::size_t n0 = g.axis(0).n, n1 = g.axis(1).n;
  RadialTable tab;
  std::vector<double> all(n0 * n1);
  for (std::size_t i1 = 0; i1 < n1; ++i1) {
    const double y = g.coord(1, i1);
    for (std::size_t i0 = 0; i0 < n0; ++i0) {
      const double x = g.coord(0, i0);
      all[i1 * n0 + i0] = x * x + y * y;
    }
  }
  tab.rho2 = all;
  std::sort(tab.rho2.begin(), tab.rho2.end());
  tab.rho2.erase(std::unique(tab.rho2.begin(), tab.rho2.end()), tab.rho2.end());
  tab.slot.resize(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto it = std::lower_bound(tab.rho2.begin(), tab.rho2.end(), all[i]);
    tab.slot[i] = static_cast<std::size_t>(it - tab.rho2.begin());
  }
  return tab;
}

void require_heisenberg_grid(const UniformGrid& g) {
  if (g.dim() != 3) throw std::invalid_argument("heisenberg kernels need a 3d grid");
  if (g.axis(0).extent != g.axis(1).extent || g.axis(0).n != g.axis(1).n)
    throw std::invalid_argument("the two horizontal axes must match");
}

// largest mu in (0, mu_max] with |h(mu)| >= eps, squared; 0 if none
double resolve_cap(const std::function<cdouble(double)>& h, double mu_max, double eps) {
  constexpr std::size_t kScan = 32768;
  double last = 0.0;
  for (std::size_t k = 1; k <= kScan; ++k) {
    const double mu = mu_max * static_cast<double>(k) / static_cast<double>(kScan);
    if (std::abs(h(mu)) >= eps) last = mu;
  }
  if (last > 0.98 * mu_max) {
    std::ostringstream os;
    os << "spectral profile still reaches " << last << " with mass above " << eps
       << "; raise mu_max past " << mu_max;
    throw std::runtime_error(os.str());
  }
  return last * last;
}

// scatter the per-(t, rho^2) table back onto the tensor grid
SampledFunction scatter(const UniformGrid& g, const RadialTable& tab,
                        const std::vector<double>& kre, const std::vector<double>& kim) {
  const std::size_t n0 = g.axis(0).n, n1 = g.axis(1).n, nt = g.axis(2).n;
  const std::size_t u = tab.rho2.size();
  SampledFunction out(g);
  std::size_t flat = 0;
  for (std::size_t it = 0; it < nt; ++it) {
    const double* re = kre.data() + it * u;
    const double* im = kim.data() + it * u;
    for (std::size_t ip = 0; ip < n0 * n1; ++ip, ++flat) {
      const std::size_t s = tab.slot[ip];
      out.values()[flat] = cdouble(re[s], im[s]);
    }
  }
  return out;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  double acc = f(a) + f(b);
  const double h = (b - a) / n;
  for (int i = 1; i < n; ++i) acc += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// fourth-order centered difference along one axis with periodic wraparound
cdouble stencil4(const SampledFunction& f, std::size_t i0, std::size_t i1, std::size_t i2,
                 int axis, double h) {
  const std::size_t n = static_cast<std::size_t>(f.grid().axis(axis).n);
  std::size_t idx[3] = {i0, i1, i2};
  const std::size_t base = idx[static_cast<std::size_t>(axis)];
  auto shifted = [&](std::size_t off_plus, bool plus) {
    std::size_t j[3] = {idx[0], idx[1], idx[2]};
    j[static_cast<std::size_t>(axis)] =
        plus ? (base + off_plus) % n : (base + n - off_plus % n) % n;
    return f.at(j[0], j[1], j[2]);
  };
  return (-shifted(2, true) + 8.0 * shifted(1, true) - 8.0 * shifted(1, false) +
          shifted(2, false)) /
         (12.0 * h);
}

cdouble trilinear(const SampledFunction& f, double x, double y, double t) {
  const UniformGrid& g = f.grid();
  double c[3] = {x, y, t};
  std::size_t lo[3];
  double fr[3];
  for (int a = 0; a < 3; ++a) {
    const double h = g.spacing(a);
    const double u = (c[a] + g.axis(a).extent) / h;
    const double fl = std::floor(u);
    const auto n = g.axis(a).n;
    const auto cell = static_cast<long long>(fl);
    lo[a] = static_cast<std::size_t>(((cell % static_cast<long long>(n)) +
                                      static_cast<long long>(n)) %
                                     static_cast<long long>(n));
    fr[a] = u - fl;
  }
  cdouble acc(0.0, 0.0);
  for (int b = 0; b < 8; ++b) {
    double wgt = 1.0;
    std::size_t idx[3];
    for (int a = 0; a < 3; ++a) {
      const bool hi = (b >> a) & 1;
      wgt *= hi ? fr[a] : 1.0 - fr[a];
      idx[a] = hi ? (lo[a] + 1) % g.axis(a).n : lo[a];
    }
    acc += wgt * f.at(idx[0], idx[1], idx[2]);
  }
  return acc;
}

}  // namespace

HPoint h_mul(const HPoint& a, const HPoint& b) {
  return {a.x + b.x, a.y + b.y, a.t + b.t + 0.5 * (a.x * b.y - a.y * b.x)};
}

HPoint h_inv(const HPoint& a) { return {-a.x, -a.y, -a.t}; }

HPoint h_dilate(double r, const HPoint& a) { return {r * a.x, r * a.y, r * r * a.t}; }

double koranyi_norm(const HPoint& g) {
  const double r2 = g.x * g.x + g.y * g.y;
  return std::pow(r2 * r2 + 16.0 * g.t * g.t, 0.25);
}

UniformGrid heisenberg_grid(double extent_xy, double extent_t, std::size_t n_xy,
                            std::size_t n_t) {
  return UniformGrid({Axis{extent_xy, n_xy}, Axis{extent_xy, n_xy}, Axis{extent_t, n_t}});
}

SpectralSynthesis sublaplacian_kernel(const std::function<cdouble(double)>& h,
                                      const UniformGrid& grid, double mu_max,
                                      double tail_eps) {
  require_heisenberg_grid(grid);
  if (!(mu_max > 0.0) || !(tail_eps > 0.0))
    throw std::invalid_argument("mu_max and tail_eps must be positive");

  const double cap = resolve_cap(h, mu_max, tail_eps);
  if (cap == 0.0) throw std::runtime_error("spectral profile is below tail_eps everywhere");

  const double t_ext = grid.axis(2).extent;
  const double dl = std::min(cap / 700.0, kPi / (4.0 * t_ext));
  const auto n_lambda = static_cast<std::size_t>(std::ceil(cap / dl));
  if (n_lambda > 200000)
    throw ResolutionError("lambda quadrature would need more than 2e5 nodes");

  const RadialTable tab = radial_table(grid);
  const std::size_t u = tab.rho2.size();
  const std::size_t nt = grid.axis(2).n;
  const auto& k = simd::active();

  std::vector<double> kre(nt * u, 0.0), kim(nt * u, 0.0);
  std::vector<double> sre(u), sim(u), uvec(u), coef_re, coef_im;
  std::size_t max_k = 0;

  for (std::size_t i = 0; i < n_lambda; ++i) {
    const double lam = (static_cast<double>(i) + 0.5) * dl;
    if (lam >= cap) break;
    const auto nk = static_cast<std::size_t>(std::floor((cap / lam - 1.0) / 2.0)) + 1;
    max_k = std::max(max_k, nk - 1);

    coef_re.resize(nk);
    coef_im.resize(nk);
    bool any_im = false;
    for (std::size_t kk = 0; kk < nk; ++kk) {
      const cdouble c = h(std::sqrt((2.0 * static_cast<double>(kk) + 1.0) * lam));
      coef_re[kk] = c.real();
      coef_im[kk] = c.imag();
      any_im = any_im || c.imag() != 0.0;
    }

    for (std::size_t s = 0; s < u; ++s) uvec[s] = 0.5 * lam * tab.rho2[s];
    std::fill(sre.begin(), sre.end(), 0.0);
    k.laguerre_sum(uvec.data(), u, coef_re.data(), nk, sre.data());
    if (any_im) {
      std::fill(sim.begin(), sim.end(), 0.0);
      k.laguerre_sum(uvec.data(), u, coef_im.data(), nk, sim.data());
    }

    const double base = dl * lam / (2.0 * kPi * kPi);
    for (std::size_t it = 0; it < nt; ++it) {
      const double a = base * std::cos(lam * grid.coord(2, it));
      k.axpy(a, sre.data(), kre.data() + it * u, u);
      if (any_im) k.axpy(a, sim.data(), kim.data() + it * u, u);
    }
  }

  SpectralSynthesis out{scatter(grid, tab, kre, kim), n_lambda, max_k, cap, u};
  return out;
}

SampledFunction heat_kernel_oracle(const UniformGrid& grid) {
  require_heisenberg_grid(grid);
  const RadialTable tab = radial_table(grid);
  const std::size_t u = tab.rho2.size();
  const std::size_t nt = grid.axis(2).n;
  const auto& k = simd::active();

  const double lmax = 80.0;
  const double dl = 0.05;
  const auto n = static_cast<std::size_t>(std::llround(lmax / dl));

  std::vector<double> kre(nt * u, 0.0), kim(nt * u, 0.0), sval(u);
  for (std::size_t i = 0; i <= n; ++i) {
    const double lam = dl * static_cast<double>(i);
    double amp, width;  // lambda / (2 sinh lambda) and lambda coth lambda
    if (lam == 0.0) {
      amp = 0.5;
      width = 1.0;
    } else {
      amp = lam / (2.0 * std::sinh(lam));
      width = lam / std::tanh(lam);
    }
    for (std::size_t s = 0; s < u; ++s) sval[s] = amp * std::exp(-0.25 * width * tab.rho2[s]);
    const double wq = (i == 0 || i == n) ? 0.5 * dl : dl;
    for (std::size_t it = 0; it < nt; ++it) {
      const double a = wq * std::cos(lam * grid.coord(2, it)) / (2.0 * kPi * kPi);
      k.axpy(a, sval.data(), kre.data() + it * u, u);
    }
  }
  return scatter(grid, tab, kre, kim);
}

PlancherelReport plancherel_check(std::size_t n_xy, std::size_t n_t) {
  DyadicWindow w;
  struct Member {
    std::string label;
    std::function<cdouble(double)> h;
  };
  const std::vector<Member> family = {
      {"heat", [](double mu) { return cdouble(std::exp(-mu * mu), 0.0); }},
      {"wide heat", [](double mu) { return cdouble(std::exp(-0.25 * mu * mu), 0.0); }},
      {"band", [&](double mu) { return cdouble(w.phi(mu), 0.0); }},
      {"wide band", [&](double mu) { return cdouble(w.phi(0.5 * mu), 0.0); }},
      {"laplacian heat",
       [](double mu) { return cdouble(mu * mu * std::exp(-mu * mu), 0.0); }},
  };

  PlancherelReport rep;
  const UniformGrid base = heisenberg_grid(6.0, 12.0, n_xy, n_t);
  for (const auto& m : family) {
    auto syn = sublaplacian_kernel(m.h, base, 16.0);
    const double grid_sq = syn.kernel.l2() * syn.kernel.l2();
    const double spec_sq =
        0.125 * simpson([&](double mu) { return std::norm(m.h(mu)) * mu * mu * mu; }, 0.0,
                        16.0, 8192);
    const double ratio = grid_sq / spec_sq;
    rep.worst_ratio_error = std::max(rep.worst_ratio_error, std::abs(ratio - 1.0));
    rep.rows.push_back({m.label, grid_sq, spec_sq, ratio});
  }

  std::vector<double> js, logs;
  for (int j = 0; j <= 3; ++j) {
    const double scale = std::ldexp(1.0, -j);
    auto hj = [&](double mu) { return cdouble(w.phi(scale * mu), 0.0); };
    const UniformGrid gj =
        heisenberg_grid(6.0 * scale, 12.0 * scale * scale, n_xy, n_t);
    auto syn = sublaplacian_kernel(hj, gj, 64.0);
    const double sq = syn.kernel.l2() * syn.kernel.l2();
    std::ostringstream os;
    os << "dilation j=" << j;
    rep.rows.push_back({os.str(), sq, 0.0, 0.0});
    js.push_back(j);
    logs.push_back(std::log2(sq));
  }
  rep.dilation_slope = fit_line(js, logs).slope;
  return rep;
}

HorizontalDerivatives horizontal_derivatives(const SampledFunction& f) {
  const UniformGrid& g = f.grid();
  if (g.dim() != 3) throw std::invalid_argument("horizontal derivatives need a 3d grid");
  const double h0 = g.spacing(0), h1 = g.spacing(1), h2 = g.spacing(2);
  SampledFunction xf(g), yf(g);
  for (std::size_t i2 = 0; i2 < g.axis(2).n; ++i2) {
    for (std::size_t i1 = 0; i1 < g.axis(1).n; ++i1) {
      const double y = g.coord(1, i1);
      for (std::size_t i0 = 0; i0 < g.axis(0).n; ++i0) {
        const double x = g.coord(0, i0);
        const cdouble dt = stencil4(f, i0, i1, i2, 2, h2);
        xf.at(i0, i1, i2) = stencil4(f, i0, i1, i2, 0, h0) - 0.5 * y * dt;
        yf.at(i0, i1, i2) = stencil4(f, i0, i1, i2, 1, h1) + 0.5 * x * dt;
      }
    }
  }
  return {std::move(xf), std::move(yf)};
}

MeanValueReport mean_value_check(const SampledFunction& K, double exponent_n,
                                 std::uint64_t seed, std::size_t probes) {
  const UniformGrid& g = K.grid();
  if (g.dim() != 3) throw std::invalid_argument("mean value check needs a 3d grid");
  if (probes == 0) throw std::invalid_argument("need at least one probe");
  Rng rng(seed);
  const double rx = g.axis(0).extent, rt = g.axis(2).extent;
  const double floor_y = std::max(g.spacing(0), g.spacing(2));
  MeanValueReport rep;
  rep.probes = probes;
  for (std::size_t p = 0; p < probes; ++p) {
    HPoint xg, yg, prod;
    double nx = 0.0, ny = 0.0;
    for (int attempt = 0; attempt < 256; ++attempt) {
      xg = {rng.uniform(-0.5 * rx, 0.5 * rx), rng.uniform(-0.5 * rx, 0.5 * rx),
            rng.uniform(-0.5 * rt, 0.5 * rt)};
      nx = koranyi_norm(xg);
      if (nx < 1.0) continue;
      yg = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      ny = koranyi_norm(yg);
      if (ny == 0.0) continue;
      const double target = rng.uniform(floor_y, nx / 10.0);
      if (target <= floor_y) continue;
      yg = h_dilate(target / ny, yg);
      ny = koranyi_norm(yg);
      prod = h_mul(xg, yg);
      if (std::abs(prod.x) < 0.9 * rx && std::abs(prod.y) < 0.9 * rx &&
          std::abs(prod.t) < 0.9 * rt)
        break;
      ny = 0.0;
    }
    if (ny == 0.0) continue;
    const cdouble shift = trilinear(K, prod.x, prod.y, prod.t);
    const cdouble at = trilinear(K, xg.x, xg.y, xg.t);
    const double val = std::abs(shift - at) * std::pow(1.0 + nx, exponent_n) / ny;
    rep.sup_ratio = std::max(rep.sup_ratio, val);
  }
  return rep;
}

std::vector<KeyLieRow> key_lie_probe(const MultiplierSpec& spec, const DyadicWindow& w,
                                     const std::vector<double>& s_grid, int j_min,
                                     int j_max) {
  if (s_grid.empty()) throw std::invalid_argument("need at least one smoothness value");
  if (j_min < 1 || j_max < j_min || j_max > 8)
    throw std::invalid_argument("need 1 <= j_min <= j_max <= 8");
  if (spec.theta() <= 0.0)
    throw std::invalid_argument("the probe walks the large-frequency side; need theta > 0");

  auto fit_n = [](double extent, double freq, std::size_t floor_n) {
    std::size_t n = floor_n;
    while (static_cast<double>(n) < 2.0 * extent * freq / (0.8 * kPi)) n *= 2;
    return n;
  };

  std::vector<double> l1s;
  std::vector<std::vector<double>> sobs(s_grid.size());
  for (int j = j_min; j <= j_max; ++j) {
    const double scale = std::ldexp(1.0, -j);
    auto hj = [&](double mu) {
      const double ph = w.phi(scale * mu * mu);
      if (ph == 0.0) return cdouble(0.0, 0.0);
      return ph * spec.eval(mu * mu);
    };
    const double mu_top = std::sqrt(std::ldexp(1.0, j + 1));
    const double ext_xy = std::max(4.0, 8.0 * std::sqrt(scale));
    const double ext_t = std::max(1.0, 16.0 * scale);
    const UniformGrid gj =
        heisenberg_grid(ext_xy, ext_t, fit_n(ext_xy, mu_top, 64),
                        fit_n(ext_t, mu_top * mu_top, 128));
    auto syn = sublaplacian_kernel(hj, gj, 2.0 * mu_top);
    l1s.push_back(syn.kernel.l1());
    DyadicPiece piece(spec, w, j, default_piece_grid());
    for (std::size_t si = 0; si < s_grid.size(); ++si)
      sobs[si].push_back(piece.sobolev(s_grid[si]));
  }

  std::vector<KeyLieRow> rows;
  for (std::size_t si = 0; si < s_grid.size(); ++si) {
    KeyLieRow row;
    row.s = s_grid[si];
    for (std::size_t ji = 0; ji < l1s.size(); ++ji) {
      row.per_j.push_back(l1s[ji] / sobs[si][ji]);
      row.sup_ratio = std::max(row.sup_ratio, row.per_j.back());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace oscmult
