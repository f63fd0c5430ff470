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

#include <cmath>

#include "qsatnet/simd.hpp"

namespace qsatnet::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

void elevation_sines(const double* x, const double* y, const double* z,
                     std::size_t n, const Observer& obs, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - obs.px;
    const double dy = y[i] - obs.py;
    const double dz = z[i] - obs.pz;
    const double range = std::sqrt(dx * dx + dy * dy + dz * dz);
    out[i] = (dx * obs.ux + dy * obs.uy + dz * obs.uz) / range;
  }
}

}  // namespace qsatnet::simd::scalar
