// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "oscmult/grid.hpp"

namespace oscmult {

enum class AmbientNorm {
  euclidean,
  koranyi,  // dim-3 grids read as (x, y, t): ((x^2+y^2)^2 + 16 t^2)^(1/4)
};

double point_norm(AmbientNorm norm, double x, double y, double z, int dim);

// || (1 + |xi|^2)^(s/2) fourier(f) ||_2. Requires f supported within half the
// grid extent on every axis; throws otherwise (zero extension would alias).
double sobolev_norm(const SampledFunction& f, double s);

// Same norm when the transform is already available.
double sobolev_norm_given_transform(const SampledFunction& fhat, double s);

// ( sum |K|^2 (1 + |x|^s)^2 cellvol )^(1/2)
double weighted_l2(const SampledFunction& K, double s, AmbientNorm norm = AmbientNorm::euclidean);

// cellvol * sum_{|x| >= r0} |K|
double l1_tail(const SampledFunction& K, double r0, AmbientNorm norm = AmbientNorm::euclidean);

// fraction of the L1 mass sitting at points with |x_a| >= frac * R_a on some axis
double boundary_mass_fraction(const SampledFunction& K, double frac = 0.9);

}  // namespace oscmult
