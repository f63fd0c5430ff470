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

// Data-parallel kernels behind a runtime-selected dispatch table.
//
// Every kernel has a scalar reference implementation. Vector variants (AVX2+FMA
// on x86-64, NEON on AArch64) are compiled into their own translation units
// and only entered when the running CPU reports support. Setting the
// environment variable QSATNET_SIMD=scalar forces the reference path.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace qsatnet::simd {

enum class Isa { kScalar, kAvx2, kNeon };

// Ground observer for batched elevation evaluation: position and local
// zenith unit vector, both in the same Earth-fixed frame as the targets.
struct Observer {
  double px = 0, py = 0, pz = 0;
  double ux = 0, uy = 0, uz = 0;
};

struct Kernels {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  // out[i] = sine of the elevation angle of target i seen from `obs`;
  // coordinates in structure-of-arrays layout.
  void (*elevation_sines)(const double* x, const double* y, const double* z,
                          std::size_t n, const Observer& obs, double* out);
};

bool isa_supported(Isa isa);
std::string_view isa_name(Isa isa);

// Table for a specific ISA; throws std::invalid_argument when unsupported.
const Kernels& kernels_for(Isa isa);

// Best supported table, chosen once per process.
const Kernels& kernels();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return kernels().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  kernels().axpy(alpha, x.data(), y.data(), x.size() < y.size() ? x.size() : y.size());
}

inline double max_abs(std::span<const double> x) {
  return kernels().max_abs(x.data(), x.size());
}

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double max_abs(const double* x, std::size_t n);
void elevation_sines(const double* x, const double* y, const double* z,
                     std::size_t n, const Observer& obs, double* out);
}  // namespace scalar

#if defined(QSATNET_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double max_abs(const double* x, std::size_t n);
void elevation_sines(const double* x, const double* y, const double* z,
                     std::size_t n, const Observer& obs, double* out);
}  // namespace avx2
#endif

#if defined(QSATNET_HAVE_NEON)
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double max_abs(const double* x, std::size_t n);
void elevation_sines(const double* x, const double* y, const double* z,
                     std::size_t n, const Observer& obs, double* out);
}  // namespace neon
#endif

}  // namespace qsatnet::simd
