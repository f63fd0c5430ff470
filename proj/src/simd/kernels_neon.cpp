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

#include <arm_neon.h>

#include <cmath>

#include "qsatnet/simd.hpp"

namespace qsatnet::simd::neon {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] = std::fma(alpha, x[i], y[i]);
}

double max_abs(const double* x, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
  return r;
}

void elevation_sines(const double* x, const double* y, const double* z,
                     std::size_t n, const Observer& obs, double* out) {
  const float64x2_t px = vdupq_n_f64(obs.px), py = vdupq_n_f64(obs.py),
                    pz = vdupq_n_f64(obs.pz);
  const float64x2_t ux = vdupq_n_f64(obs.ux), uy = vdupq_n_f64(obs.uy),
                    uz = vdupq_n_f64(obs.uz);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(x + i), px);
    const float64x2_t dy = vsubq_f64(vld1q_f64(y + i), py);
    const float64x2_t dz = vsubq_f64(vld1q_f64(z + i), pz);
    float64x2_t r2 = vmulq_f64(dx, dx);
    r2 = vfmaq_f64(r2, dy, dy);
    r2 = vfmaq_f64(r2, dz, dz);
    float64x2_t up = vmulq_f64(dx, ux);
    up = vfmaq_f64(up, dy, uy);
    up = vfmaq_f64(up, dz, uz);
    vst1q_f64(out + i, vdivq_f64(up, vsqrtq_f64(r2)));
  }
  if (i < n) scalar::elevation_sines(x + i, y + i, z + i, n - i, obs, out + i);
}

}  // namespace qsatnet::simd::neon
