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

#include "qsatnet/metrics.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qsatnet::metrics {

double student_t_critical(double level, double dof) {
  if (!(level > 0.0 && level < 1.0) || !(dof > 0.0)) {
    throw std::invalid_argument("student_t_critical: bad level or degrees of freedom");
  }
  const boost::math::students_t dist(dof);
  return boost::math::quantile(dist, 1.0 - (1.0 - level) / 2.0);
}

SummaryStats aggregate(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("aggregate: empty series");
  SummaryStats s;
  s.count = values.size();
  // Welford keeps the variance stable for long slot series.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double v : values) {
    ++k;
    const double d = v - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (v - mean);
  }
  s.mean = mean;
  if (s.count > 1) {
    s.stddev = std::sqrt(std::max(m2, 0.0) / static_cast<double>(s.count - 1));
    s.ci99_half_width = student_t_critical(0.99, static_cast<double>(s.count - 1)) * s.stddev /
                        std::sqrt(static_cast<double>(s.count));
  }
  return s;
}

SummaryStats batch_means(std::span<const double> series, std::size_t batches) {
  if (series.empty()) throw std::invalid_argument("batch_means: empty series");
  if (batches == 0) throw std::invalid_argument("batch_means: zero batches");
  if (series.size() < batches) batches = series.size();
  const std::size_t size = series.size() / batches;
  std::vector<double> means;
  for (std::size_t b = 0; b < batches; ++b) {
    double sum = 0.0;
    for (std::size_t i = b * size; i < (b + 1) * size; ++i) sum += series[i];
    means.push_back(sum / static_cast<double>(size));
  }
  SummaryStats s = aggregate(means);
  s.count = size * batches;
  return s;
}

}  // namespace qsatnet::metrics
