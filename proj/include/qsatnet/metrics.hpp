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

// Summary statistics with Student-t confidence intervals.

#pragma once

#include <cstddef>
#include <span>

namespace qsatnet::metrics {

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1) standard deviation
  std::size_t count = 0;
  double ci99_half_width = 0.0;
};

// Two-sided quantile t_{1 - (1 - level) / 2, dof}.
double student_t_critical(double level, double dof);

// Unbiased mean and variance with a 99% Student-t interval. Throws
// std::invalid_argument on an empty series. A single value has zero spread
// and zero half-width.
SummaryStats aggregate(std::span<const double> values);

// Batch-means estimate for an autocorrelated series: the series is cut into
// `batches` contiguous equal batches (trailing remainder dropped) and
// aggregate() is applied to the batch means. The reported count is the
// number of original samples used.
SummaryStats batch_means(std::span<const double> series, std::size_t batches = 20);

}  // namespace qsatnet::metrics
