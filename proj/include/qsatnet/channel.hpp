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

// Loss and success-probability formulas for fiber links, slotted elementary
// ebit generation and passive satellite lightpaths.

#pragma once

#include <span>

namespace qsatnet::channel {

struct GenerationParams {
  double q_gen = 1.0;    // source generation efficiency, (0,1]
  int n_attempts = 1;    // attempts per slot, >= 1
};

struct FiberParams {
  double gamma_db_per_km = 0.2;  // attenuation, > 0
  double length_km = 0.0;        // >= 0
};

// Photon loss probability over fiber: 1 - 10^(-L*gamma/10).
double fiber_loss(const FiberParams& params);

// Probability that at least one of `n_attempts` generation attempts in a slot
// succeeds, given the per-attempt channel loss probability `q_chan`.
double link_success(const GenerationParams& gen, double q_chan);

// End-to-end success of a lightpath: both GSL survival probabilities times the
// product of per-satellite lens success probabilities.
double lightpath_success(double uplink_survival,
                         std::span<const double> lens_success,
                         double downlink_survival);

// Convenience: fiber generation success for a link of the given length.
inline double fiber_link_success(const GenerationParams& gen, double gamma_db_per_km,
                                 double length_km) {
  return link_success(gen, fiber_loss({gamma_db_per_km, length_km}));
}

}  // namespace qsatnet::channel
