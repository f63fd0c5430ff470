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

#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "qsatnet/metrics.hpp"

using namespace qsatnet::metrics;

TEST_CASE("constant series") {
  const std::vector<double> v = {7.2, 7.2, 7.2};
  const SummaryStats s = aggregate(v);
  CHECK(s.mean == doctest::Approx(7.2));
  CHECK(s.stddev == 0.0);
  CHECK(s.ci99_half_width == 0.0);
  CHECK(s.count == 3);
}

TEST_CASE("two points") {
  const std::vector<double> v = {4, 8};
  const SummaryStats s = aggregate(v);
  CHECK(s.mean == 6.0);
  CHECK(s.stddev == doctest::Approx(std::sqrt(8.0)));
  // t_{0.995,1} = 63.657
  CHECK(s.ci99_half_width == doctest::Approx(63.656741 * 2.0).epsilon(1e-6));
}

TEST_CASE("single value and empty input") {
  const std::vector<double> one = {3.0};
  CHECK(aggregate(one).ci99_half_width == 0.0);
  CHECK_THROWS_AS(aggregate(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("student t critical values") {
  CHECK(student_t_critical(0.99, 2) == doctest::Approx(9.924843).epsilon(1e-6));
  CHECK(student_t_critical(0.99, 19) == doctest::Approx(2.860935).epsilon(1e-6));
  CHECK(student_t_critical(0.95, 1e6) == doctest::Approx(1.959966).epsilon(1e-5));
}

TEST_CASE("aggregate is permutation invariant") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(3.0, 2.0);
  std::vector<double> v(101);
  for (double& x : v) x = n(rng);
  const SummaryStats a = aggregate(v);
  std::shuffle(v.begin(), v.end(), rng);
  const SummaryStats b = aggregate(v);
  CHECK(a.mean == doctest::Approx(b.mean).epsilon(1e-14));
  CHECK(a.stddev == doctest::Approx(b.stddev).epsilon(1e-12));
}

TEST_CASE("batch means") {
  std::vector<double> v;
  for (int i = 0; i < 205; ++i) v.push_back(i % 2);
  const SummaryStats s = batch_means(v, 20);
  CHECK(s.count == 200);
  CHECK(s.mean == doctest::Approx(0.5));
  CHECK(s.stddev == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(batch_means(std::vector<double>{1.0}, 20).count == 1);
  CHECK_THROWS(batch_means(std::vector<double>{}, 20));
}

TEST_CASE("interval covers the mean of a normal sample") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(7.2, 1.0);
  int covered = 0;
  for (int rep = 0; rep < 400; ++rep) {
    std::vector<double> v(20);
    for (double& x : v) x = n(rng);
    const SummaryStats s = aggregate(v);
    if (std::fabs(s.mean - 7.2) <= s.ci99_half_width) ++covered;
  }
  CHECK(covered >= 388);  // 99% nominal, binomial 3 sigma slack
}
