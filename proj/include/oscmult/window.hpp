// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

namespace oscmult {

// C-infinity ramp, 0 for x <= 0 and 1 for x >= 1.
double smoothstep01(double x);

// Smooth falling step: 1 for lam <= 1, 0 for lam >= 2.
double smooth_cap(double lam);

// Smooth spectral cutoffs: chi_plus vanishes for lam <= 1 (1 for lam >= 2),
// chi_minus vanishes for lam >= 1 (1 for lam <= 1/2).
double chi_plus(double lam);
double chi_minus(double lam);

// Dyadic bump phi(lam) = cap(lam) - cap(2 lam), supported in [1/2, 2].
// With the default cap the shifts telescope: sum_j phi(2^{-j} lam) = 1 for
// every lam > 0. Alternative caps can be injected; the partition flag records
// whether the injected family still sums to one.
class DyadicWindow {
 public:
  DyadicWindow();
  DyadicWindow(std::function<double(double)> cap, bool partition);

  double cap(double lam) const { return cap_(lam); }
  double phi(double lam) const { return cap_(lam) - cap_(2.0 * lam); }
  bool partition_of_unity() const { return partition_; }

 private:
  std::function<double(double)> cap_;
  bool partition_;
};

}  // namespace oscmult
