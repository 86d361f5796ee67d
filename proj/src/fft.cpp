// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "oscmult/simd.hpp"

namespace oscmult {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

FftPlan::FftPlan(std::size_t n, bool inverse) : n_(n) {
  if (!is_pow2(n)) throw std::invalid_argument("fft length must be a power of two");
  int log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;

  std::vector<std::uint32_t> rev(n, 0);
  for (std::size_t i = 1; i < n; ++i)
    rev[i] = static_cast<std::uint32_t>((rev[i >> 1] >> 1) | ((i & 1) << (log2n - 1)));
  for (std::size_t i = 0; i < n; ++i)
    if (i < rev[i]) swaps_.emplace_back(static_cast<std::uint32_t>(i), rev[i]);

  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<double> wre(2 * half), wim(2 * half);
    for (std::size_t q = 0; q < half; ++q) {
      const double ang = sign * 2.0 * kPi * static_cast<double>(q) / static_cast<double>(len);
      wre[2 * q] = wre[2 * q + 1] = std::cos(ang);
      wim[2 * q] = wim[2 * q + 1] = std::sin(ang);
    }
    wre_.push_back(std::move(wre));
    wim_.push_back(std::move(wim));
  }
}

void FftPlan::execute(std::complex<double>* a) const {
  for (const auto& [i, j] : swaps_) std::swap(a[i], a[j]);
  const auto& k = simd::active();
  std::size_t stage = 0;
  for (std::size_t len = 2; len <= n_; len <<= 1, ++stage)
    k.fft_stage(a, n_, len, wre_[stage].data(), wim_[stage].data());
}

const FftPlan& fft_plan(std::size_t n, bool inverse) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, bool>, FftPlan> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, inverse);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, FftPlan(n, inverse)).first;
  return it->second;
}

void fft_axis(std::complex<double>* data, std::size_t total, std::size_t len,
              std::size_t stride, bool inverse) {
  const FftPlan& plan = fft_plan(len, inverse);
  if (stride == 1) {
    for (std::size_t off = 0; off < total; off += len) plan.execute(data + off);
    return;
  }
  std::vector<std::complex<double>> line(len);
  const std::size_t block = stride * len;  // one bundle of `stride` interleaved lines
  for (std::size_t base = 0; base < total; base += block) {
    for (std::size_t lane = 0; lane < stride; ++lane) {
      std::complex<double>* p = data + base + lane;
      for (std::size_t i = 0; i < len; ++i) line[i] = p[i * stride];
      plan.execute(line.data());
      for (std::size_t i = 0; i < len; ++i) p[i * stride] = line[i];
    }
  }
}

}  // namespace oscmult
