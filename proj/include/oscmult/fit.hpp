// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace oscmult {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

// Least squares line y = slope * x + intercept. Needs at least two points.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Fits log2(y) against x; y must be positive.
LineFit fit_log2(const std::vector<double>& x, const std::vector<double>& y);

// Same, restricted to the outer half of the points (largest x), where
// geometric sequences have shed their transient.
LineFit fit_log2_outer_half(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> v);

}  // namespace oscmult
