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

#include "qsatnet/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace qsatnet::channel {

double fiber_loss(const FiberParams& params) {
  if (!(params.gamma_db_per_km > 0.0) || !(params.length_km >= 0.0)) {
    throw std::invalid_argument("fiber_loss: gamma must be > 0 and length >= 0");
  }
  // -expm1 keeps precision for short links where the loss is tiny.
  const double exponent = -params.length_km * params.gamma_db_per_km / 10.0;
  return -std::expm1(exponent * std::log(10.0));
}

double link_success(const GenerationParams& gen, double q_chan) {
  if (!(gen.q_gen > 0.0 && gen.q_gen <= 1.0) || gen.n_attempts < 1) {
    throw std::invalid_argument("link_success: q_gen in (0,1] and n_attempts >= 1 required");
  }
  if (!(q_chan >= 0.0 && q_chan <= 1.0)) {
    throw std::invalid_argument("link_success: q_chan must lie in [0,1]");
  }
  const double per_attempt = gen.q_gen * (1.0 - q_chan);
  if (per_attempt >= 1.0) return 1.0;
  // 1 - (1-p)^N computed as -expm1(N * log1p(-p)).
  return -std::expm1(gen.n_attempts * std::log1p(-per_attempt));
}

double lightpath_success(double uplink_survival, std::span<const double> lens_success,
                         double downlink_survival) {
  if (lens_success.empty()) {
    throw std::invalid_argument("lightpath_success: at least one satellite required");
  }
  double q = uplink_survival * downlink_survival;
  for (double s : lens_success) q *= s;
  return q;
}

}  // namespace qsatnet::channel
