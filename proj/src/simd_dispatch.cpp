// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/simd.hpp"

#include <cstdlib>
#include <stdexcept>

namespace oscmult::simd {
namespace {

Isa resolve_initial() {
  if (const char* env = std::getenv("OSCMULT_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2") {
      if (!avx2_supported())
        throw std::runtime_error("OSCMULT_SIMD=avx2 but CPU lacks AVX2/FMA");
      return Isa::avx2;
    }
    if (v != "auto" && !v.empty())
      throw std::runtime_error("OSCMULT_SIMD must be scalar, avx2 or auto");
  }
  return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

Isa& current() {
  static Isa isa = resolve_initial();
  return isa;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return current(); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_supported())
    throw std::runtime_error("AVX2/FMA not available on this CPU");
  current() = isa;
}

std::string isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const Kernels& active() {
#if defined(__x86_64__) || defined(_M_X64)
  if (current() == Isa::avx2) return avx2_kernels();
#endif
  return scalar_kernels();
}

}  // namespace oscmult::simd
