// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/cz_hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "oscmult/dyadic.hpp"
#include "oscmult/kernel_rn.hpp"
#include "oscmult/parallel.hpp"
#include "oscmult/rng.hpp"
#include "oscmult/transforms.hpp"

namespace oscmult {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct Block {
  std::array<std::size_t, 3> lo{};
  std::size_t side = 0;
};

void block_sums(const SampledFunction& f, int dim, const Block& b, cdouble* sum,
                double* abs_sum) {
  cdouble s{};
  double a = 0.0;
  const std::size_t s1 = dim > 1 ? b.side : 1;
  const std::size_t s2 = dim > 2 ? b.side : 1;
  for (std::size_t i2 = 0; i2 < s2; ++i2)
    for (std::size_t i1 = 0; i1 < s1; ++i1)
      for (std::size_t i0 = 0; i0 < b.side; ++i0) {
        const cdouble v = f.at(b.lo[0] + i0, b.lo[1] + i1, b.lo[2] + i2);
        s += v;
        a += std::abs(v);
      }
  *sum = s;
  *abs_sum = a;
}

double block_cells(int dim, std::size_t side) {
  double c = static_cast<double>(side);
  for (int a = 1; a < dim; ++a) c *= static_cast<double>(side);
  return c;
}

}  // namespace

CzDecomposition cz_decompose(const SampledFunction& f, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("cz_decompose: alpha must be positive");
  const UniformGrid& g = f.grid();
  const int dim = g.dim();
  const std::size_t n = g.axis(0).n;
  for (int a = 1; a < dim; ++a)
    if (g.axis(a).n != n || g.axis(a).extent != g.axis(0).extent)
      throw std::invalid_argument("cz_decompose: dyadic cubes need congruent axes");

  const Block root{{0, 0, 0}, n};
  cdouble root_sum;
  double root_abs;
  block_sums(f, dim, root, &root_sum, &root_abs);
  if (root_abs / block_cells(dim, n) > alpha)
    throw std::invalid_argument(
        "cz_decompose: the whole-grid average already exceeds alpha; raise alpha or enlarge "
        "the grid");

  std::vector<CzCube> cubes;
  std::vector<Block> stack = {root};
  const int children = 1 << dim;
  while (!stack.empty()) {
    const Block b = stack.back();
    stack.pop_back();
    if (b.side == 1) continue;
    const std::size_t half = b.side / 2;
    for (int c = 0; c < children; ++c) {
      Block child{b.lo, half};
      for (int a = 0; a < dim; ++a)
        if (c & (1 << a)) child.lo[static_cast<std::size_t>(a)] += half;
      cdouble sum;
      double abs_sum;
      block_sums(f, dim, child, &sum, &abs_sum);
      const double cells = block_cells(dim, half);
      if (abs_sum / cells > alpha) {
        CzCube cube;
        cube.lo = child.lo;
        cube.side = half;
        const double side_phys = static_cast<double>(half) * g.spacing(0);
        cube.level = static_cast<int>(std::lround(std::log2(side_phys)));
        cube.average = sum / cells;
        cube.abs_average = abs_sum / cells;
        cube.measure = cells * g.cell_volume();
        cubes.push_back(cube);
      } else if (half > 1) {
        stack.push_back(child);
      }
    }
  }

  SampledFunction good = f;
  SampledFunction bad(g);
  for (const CzCube& cube : cubes) {
    const std::size_t s1 = dim > 1 ? cube.side : 1;
    const std::size_t s2 = dim > 2 ? cube.side : 1;
    for (std::size_t i2 = 0; i2 < s2; ++i2)
      for (std::size_t i1 = 0; i1 < s1; ++i1)
        for (std::size_t i0 = 0; i0 < cube.side; ++i0) {
          const std::size_t j0 = cube.lo[0] + i0;
          const std::size_t j1 = cube.lo[1] + i1;
          const std::size_t j2 = cube.lo[2] + i2;
          bad.at(j0, j1, j2) = f.at(j0, j1, j2) - cube.average;
          good.at(j0, j1, j2) = cube.average;
        }
  }
  return CzDecomposition{std::move(good), std::move(bad), std::move(cubes), alpha};
}

SampledFunction cz_bad_part(const CzDecomposition& dec, std::size_t cube_index) {
  if (cube_index >= dec.cubes.size())
    throw std::invalid_argument("cz_bad_part: cube index out of range");
  const CzCube& cube = dec.cubes[cube_index];
  const int dim = dec.bad.grid().dim();
  SampledFunction out(dec.bad.grid());
  const std::size_t s1 = dim > 1 ? cube.side : 1;
  const std::size_t s2 = dim > 2 ? cube.side : 1;
  for (std::size_t i2 = 0; i2 < s2; ++i2)
    for (std::size_t i1 = 0; i1 < s1; ++i1)
      for (std::size_t i0 = 0; i0 < cube.side; ++i0)
        out.at(cube.lo[0] + i0, cube.lo[1] + i1, cube.lo[2] + i2) =
            dec.bad.at(cube.lo[0] + i0, cube.lo[1] + i1, cube.lo[2] + i2);
  return out;
}

Atom make_atom(AtomShape shape, int level, const UniformGrid& grid, double center,
               std::uint64_t seed) {
  if (grid.dim() != 1) throw std::invalid_argument("make_atom: atoms live on line grids");
  const double radius = std::ldexp(1.0, level);
  const double extent = grid.axis(0).extent;
  if (center - radius < -extent || center + radius >= extent)
    throw std::invalid_argument("make_atom: ball leaves the grid");

  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < grid.axis(0).n; ++i)
    if (std::abs(grid.coord(0, i) - center) <= radius) cells.push_back(i);
  if (cells.size() < 4)
    throw ResolutionError("make_atom: ball covers fewer than 4 cells; refine the grid");

  Rng rng(seed);
  SampledFunction a(grid);
  for (std::size_t i : cells) {
    const double u = (grid.coord(0, i) - center) / radius;
    double v = 0.0;
    switch (shape) {
      case AtomShape::bump_dipole:
        if (std::abs(u) < 1.0) v = u * std::exp(-1.0 / (1.0 - u * u));
        break;
      case AtomShape::step_dipole:
        v = u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
        break;
      case AtomShape::random_mean_zero:
        v = rng.uniform(-1.0, 1.0);
        break;
    }
    a.at(i) = v;
  }

  cdouble mean{};
  for (std::size_t i : cells) mean += a.at(i);
  mean /= static_cast<double>(cells.size());
  for (std::size_t i : cells) a.at(i) -= mean;

  const double sup = a.max_abs();
  if (sup == 0.0) throw std::invalid_argument("make_atom: degenerate (constant) atom sample");
  const double measure = 2.0 * radius;
  const double scale = std::min(1.0 / (measure * sup), 1.0 / (std::sqrt(measure) * a.l2()));
  for (cdouble& v : a.values()) v *= scale;

  Atom out{std::move(a), level, center, measure};
  return out;
}

double l1_ball_complement(const SampledFunction& f, double center, double radius) {
  if (f.grid().dim() != 1)
    throw std::invalid_argument("l1_ball_complement: line grids only");
  const double h = f.grid().spacing(0);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.grid().axis(0).n; ++i)
    if (std::abs(f.grid().coord(0, i) - center) >= radius) sum += std::abs(f.at(i));
  return h * sum;
}

AtomTestReport atom_test(const MultiplierSpec& spec, const DyadicWindow& w, int J,
                         AtomShape shape, const std::vector<int>& levels, std::uint64_t seed,
                         bool ablate_cancellation) {
  if (J < 1 || J > 14) throw std::invalid_argument("atom_test: truncation J in [1, 14]");
  if (levels.empty()) throw std::invalid_argument("atom_test: empty level list");

  std::vector<UniformGrid> grids;
  grids.reserve(levels.size());
  for (int L : levels) {
    const double radius = std::ldexp(1.0, L);
    const double extent = std::max(16.0 * radius, 16.0);
    const double need_freq = (2.5 / kPi) * extent * std::ldexp(1.0, J + 1);
    const double need_atom = 32.0 * extent / radius;
    std::size_t n = std::size_t{1} << 12;
    while (static_cast<double>(n) < std::max(need_freq, need_atom)) {
      n <<= 1;
      if (n > (std::size_t{1} << 22))
        throw ResolutionError("atom_test: level needs more than 2^22 cells at this truncation");
    }
    grids.push_back(UniformGrid::line(extent, n));
  }

  AtomTestReport report;
  report.rows.resize(levels.size());
  parallel_for(levels.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const int L = levels[i];
      const double radius = std::ldexp(1.0, L);
      const UniformGrid& g = grids[i];
      const std::size_t n = g.axis(0).n;
      const Atom atom = make_atom(shape, L, g, 0.0, seed + static_cast<std::uint64_t>(L + 64));
      SampledFunction input = atom.values;
      if (ablate_cancellation)
        for (cdouble& v : input.values()) v = std::abs(v);
      const SampledFunction M = band_multiplier(spec, w, J, g);
      const SampledFunction Ta = apply_multiplier(M, input);

      AtomRow row;
      row.level = L;
      row.total = Ta.l1();
      row.far = l1_ball_complement(Ta, 0.0, 8.0 * radius);
      row.near = row.total - row.far;
      double near_cells = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (std::abs(g.coord(0, k)) < 8.0 * radius) near_cells += 1.0;
      row.near_bound = std::sqrt(near_cells * g.spacing(0)) * M.max_abs() * input.l2();
      report.rows[i] = row;
    }
  });

  report.far_min = std::numeric_limits<double>::infinity();
  report.far_max = 0.0;
  for (const AtomRow& row : report.rows) {
    report.far_min = std::min(report.far_min, row.far);
    report.far_max = std::max(report.far_max, row.far);
  }
  report.far_spread = report.far_min > 0.0
                          ? report.far_max / report.far_min
                          : std::numeric_limits<double>::infinity();
  return report;
}

PairPartition partition_pairs(const std::vector<int>& js, const std::vector<int>& levels,
                              double theta) {
  if (theta == 1.0)
    throw std::invalid_argument("partition_pairs: theta = 1 leaves no dyadic large part");
  for (int j : js)
    if (!(j * theta > 0.0))
      throw std::invalid_argument("partition_pairs: every j must satisfy j theta > 0");
  PairPartition out;
  for (int j : js)
    for (int L : levels) {
      const double nu = static_cast<double>(j) * (1.0 - theta) + static_cast<double>(L);
      (nu <= 0.0 ? out.n_set : out.p_set).emplace_back(j, L);
    }
  return out;
}

TailSumReport tail_sum_criterion(const MultiplierSpec& spec, const DyadicWindow& w, double s,
                                 const std::vector<int>& js, const std::vector<int>& levels) {
  if (!(s > 0.5)) throw std::invalid_argument("tail_sum_criterion: needs s > 1/2 on the line");
  if (js.empty() || levels.empty())
    throw std::invalid_argument("tail_sum_criterion: empty index lists");
  const double theta = spec.theta();
  for (int j : js)
    if (!(j * theta > 0.0))
      throw std::invalid_argument("tail_sum_criterion: every j must satisfy j theta > 0");

  struct Job {
    int j;
    int L;
    double nu;
  };
  std::vector<Job> jobs;
  for (int j : js)
    for (int L : levels) {
      const double nu = static_cast<double>(j) * (1.0 - theta) + static_cast<double>(L);
      if (nu >= 0.0) jobs.push_back({j, L, nu});
    }
  if (jobs.empty())
    throw std::invalid_argument("tail_sum_criterion: no pairs with j(1-theta)+L >= 0");

  TailSumReport report;
  report.s = s;
  report.expected_slope = -(s - 0.5);
  report.levels = levels;
  std::vector<UniformGrid> grids;
  grids.reserve(jobs.size());
  for (const Job& job : jobs)
    grids.push_back(piece_kernel_grid(spec, job.j, 4.0 * std::ldexp(8.0, job.j + job.L), 0.25));

  report.cells.resize(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Job& job = jobs[i];
      const double tail_radius = std::ldexp(8.0, job.j + job.L);
      const UniformGrid& g = grids[i];
      const RadialKernel K = piece_kernel_line(spec, w, job.j, g);
      TailSumCell cell;
      cell.j = job.j;
      cell.level = job.L;
      cell.nu = job.nu;
      cell.actual = l1_tail(K.values, tail_radius);
      cell.bound = cs_tail_constant(g, s, tail_radius) * weighted_l2(K.values, s);
      report.cells[i] = cell;
    }
  });

  std::vector<double> nus, logs;
  for (const TailSumCell& cell : report.cells) {
    nus.push_back(cell.nu);
    logs.push_back(std::log2(cell.bound));
  }
  report.bound_fit = fit_line(nus, logs);

  for (int L : levels) {
    double sum = 0.0;
    for (const TailSumCell& cell : report.cells)
      if (cell.level == L) sum += cell.actual;
    report.level_sums.push_back(sum);
    report.sup_level_sum = std::max(report.sup_level_sum, sum);
  }
  return report;
}

double weak_quasinorm(const SampledFunction& f, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("weak_quasinorm: scale must be positive");
  std::vector<double> v;
  v.reserve(f.values().size());
  for (const cdouble& z : f.values()) v.push_back(std::abs(z));
  std::sort(v.begin(), v.end(), std::greater<double>());
  const double cell = f.grid().cell_volume();
  double best = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k)
    best = std::max(best, v[k] * static_cast<double>(k + 1) * cell);
  return best / scale;
}

WeakTypeReport weak_type_probe(const MultiplierSpec& spec, const DyadicWindow& w,
                               const std::vector<int>& ladder, std::uint64_t seed) {
  if (ladder.empty()) throw std::invalid_argument("weak_type_probe: empty ladder");
  int j_top = ladder.front();
  for (int J : ladder) {
    if (J < 1 || J > 14) throw std::invalid_argument("weak_type_probe: rungs J in [1, 14]");
    j_top = std::max(j_top, J);
  }

  const double extent = 64.0;
  const double need_freq = (2.5 / kPi) * extent * std::ldexp(1.0, j_top + 1);
  std::size_t n = std::size_t{1} << 12;
  while (static_cast<double>(n) < need_freq) {
    n <<= 1;
    if (n > (std::size_t{1} << 22))
      throw ResolutionError("weak_type_probe: ladder top needs more than 2^22 cells");
  }
  const UniformGrid g = UniformGrid::line(extent, n);
  const double h = g.spacing(0);

  std::vector<std::pair<std::string, SampledFunction>> family;
  {
    SampledFunction spike(g);
    spike.at(n / 2) = 1.0 / h;
    family.emplace_back("spike", std::move(spike));

    SampledFunction bump = SampledFunction::sample(
        g, [](double x, double, double) { return std::exp(-0.5 * x * x); });
    family.emplace_back("bump", std::move(bump));

    family.emplace_back("near-atom", make_atom(AtomShape::step_dipole, -4, g, 0.0, seed).values);

    Rng rng(seed);
    SampledFunction train(g);
    for (int k = 0; k < 5; ++k) {
      const std::size_t cell = n / 4 + rng.index(n / 2);
      train.at(cell) += 0.2 / h;
    }
    family.emplace_back("spike-train", std::move(train));
  }

  std::vector<SampledFunction> bands;
  bands.reserve(ladder.size());
  for (int J : ladder) bands.push_back(band_multiplier(spec, w, J, g));

  WeakTypeReport report;
  report.ladder = ladder;
  report.rows.resize(ladder.size() * family.size());
  parallel_for(ladder.size() * family.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const std::size_t rung = i / family.size();
      const std::size_t k = i % family.size();
      const SampledFunction Ta = apply_multiplier(bands[rung], family[k].second);
      WeakTypeRow row;
      row.input = family[k].first;
      row.J = ladder[rung];
      row.constant = weak_quasinorm(Ta, family[k].second.l1());
      report.rows[i] = row;
    }
  });

  double spike_min = std::numeric_limits<double>::infinity();
  double spike_max = 0.0;
  for (const WeakTypeRow& row : report.rows) {
    report.family_sup = std::max(report.family_sup, row.constant);
    if (row.input == "spike") {
      spike_min = std::min(spike_min, row.constant);
      spike_max = std::max(spike_max, row.constant);
    }
  }
  report.spike_spread = spike_min > 0.0 ? spike_max / spike_min
                                        : std::numeric_limits<double>::infinity();
  return report;
}

LambdaChoice optimal_lambda(int j, int level, double theta, double s, double s_star, double q,
                            SplitRegime regime, double q_threshold) {
  if (theta == 1.0)
    throw std::invalid_argument("optimal_lambda: theta = 1 leaves no dyadic large part");
  if (!(j * theta > 0.0)) throw std::invalid_argument("optimal_lambda: needs j theta > 0");
  const double nu = static_cast<double>(j) * (1.0 - theta) + static_cast<double>(level);
  if (nu > 0.0)
    throw std::invalid_argument("optimal_lambda: pair outside N (j(1-theta) + L > 0)");
  if (!(s > q / 2.0)) throw std::invalid_argument("optimal_lambda: needs s > q/2");

  LambdaChoice out;
  if (regime == SplitRegime::n1) {
    if (!(static_cast<double>(j) + q_threshold <= 0.0))
      throw std::invalid_argument("optimal_lambda: n1 needs j + threshold <= 0");
    if (!(s_star < q / 2.0))
      throw std::invalid_argument("optimal_lambda: n1 needs s_star < q/2");
    out.lambda = -nu;
    out.lambda_balanced = -nu;
    out.s_term = std::exp2((q / 2.0 - s_star) * (nu + out.lambda_balanced));
    out.l_term = std::exp2(-(s - q / 2.0) * (nu + out.lambda_balanced));
  } else {
    if (!(static_cast<double>(j) + q_threshold > 0.0))
      throw std::invalid_argument("optimal_lambda: n2 needs j + threshold > 0");
    const double jl = static_cast<double>(j + level);
    const double jts = static_cast<double>(j) * theta * s;
    out.lambda = (-(s - q / 2.0) * jl + 0.5 * jts) / s;
    out.lambda_balanced = (-(s - q / 2.0) * jl + jts) / s;
    out.s_term = std::exp2(0.5 * q * out.lambda_balanced - 0.5 * q * theta * j);
    out.l_term = std::exp2(-(s - q / 2.0) * (nu + out.lambda_balanced));
  }
  out.balanced_sum = out.s_term + out.l_term;
  return out;
}

}  // namespace oscmult
