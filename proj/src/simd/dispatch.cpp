// Copyright 2026 The qsatnet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qsatnet/simd.hpp"

namespace qsatnet::simd {
namespace {

constexpr Kernels kScalarTable{Isa::kScalar, &scalar::dot, &scalar::axpy,
                               &scalar::max_abs, &scalar::elevation_sines};
#if defined(QSATNET_HAVE_AVX2)
constexpr Kernels kAvx2Table{Isa::kAvx2, &avx2::dot, &avx2::axpy, &avx2::max_abs,
                             &avx2::elevation_sines};
#endif
#if defined(QSATNET_HAVE_NEON)
constexpr Kernels kNeonTable{Isa::kNeon, &neon::dot, &neon::axpy, &neon::max_abs,
                             &neon::elevation_sines};
#endif

bool forced_scalar() {
  const char* env = std::getenv("QSATNET_SIMD");
  return env != nullptr && std::string(env) == "scalar";
}

const Kernels& select_best() {
  if (!forced_scalar()) {
    if (isa_supported(Isa::kAvx2)) return kernels_for(Isa::kAvx2);
    if (isa_supported(Isa::kNeon)) return kernels_for(Isa::kNeon);
  }
  return kScalarTable;
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(QSATNET_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(QSATNET_HAVE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

const Kernels& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("SIMD ISA not supported on this CPU: " +
                                std::string(isa_name(isa)));
  }
  switch (isa) {
#if defined(QSATNET_HAVE_AVX2)
    case Isa::kAvx2: return kAvx2Table;
#endif
#if defined(QSATNET_HAVE_NEON)
    case Isa::kNeon: return kNeonTable;
#endif
    default: return kScalarTable;
  }
}

const Kernels& kernels() {
  static const Kernels& table = select_best();
  return table;
}

}  // namespace qsatnet::simd
