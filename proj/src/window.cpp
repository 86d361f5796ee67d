// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/window.hpp"

#include <cmath>
#include <utility>

namespace oscmult {

namespace {
double bump_half(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
}  // namespace

double smoothstep01(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = bump_half(x);
  return a / (a + bump_half(1.0 - x));
}

double smooth_cap(double lam) { return smoothstep01(2.0 - lam); }

double chi_plus(double lam) { return 1.0 - smooth_cap(lam); }

double chi_minus(double lam) { return smooth_cap(2.0 * lam); }

DyadicWindow::DyadicWindow() : cap_(smooth_cap), partition_(true) {}

DyadicWindow::DyadicWindow(std::function<double(double)> cap, bool partition)
    : cap_(std::move(cap)), partition_(partition) {}

}  // namespace oscmult
