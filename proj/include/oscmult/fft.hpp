// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace oscmult {

// Iterative radix-2 DFT for power-of-two lengths. Plans (twiddles + bit
// reversal) are cached per (n, direction); execution dispatches to the
// active SIMD butterfly kernel. No normalization is applied.
class FftPlan {
 public:
  FftPlan(std::size_t n, bool inverse);
  void execute(std::complex<double>* a) const;
  std::size_t length() const { return n_; }

 private:
  std::size_t n_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> swaps_;
  std::vector<std::vector<double>> wre_, wim_;  // per stage, lane-duplicated
};

const FftPlan& fft_plan(std::size_t n, bool inverse);

// In-place transform along one axis of a flat row-major-fastest-first array:
// axis a has length len and stride st; the array holds `total` elements.
void fft_axis(std::complex<double>* data, std::size_t total, std::size_t len,
              std::size_t stride, bool inverse);

}  // namespace oscmult
