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
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qsatnet/channel.hpp"

using namespace qsatnet::channel;

TEST_CASE("fiber loss") {
  CHECK(fiber_loss({0.2, 50.0}) == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(fiber_loss({0.2, 0.0}) == 0.0);
  CHECK(std::fabs(fiber_loss({0.2, 100.0}) - 0.99) < 1e-12);
  CHECK(std::fabs(fiber_loss({0.2, 5.0}) - (1.0 - std::pow(10.0, -0.1))) < 1e-12);
  CHECK_THROWS_AS(fiber_loss({0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(fiber_loss({0.2, -1.0}), std::invalid_argument);
}

TEST_CASE("link success") {
  CHECK(std::fabs(link_success({1.0, 1}, 0.9) - 0.1) < 1e-12);
  CHECK(std::fabs(link_success({0.5, 3}, 0.2) - (1.0 - std::pow(0.6, 3))) < 1e-12);
  CHECK(link_success({1.0, 4}, 0.0) == 1.0);
  CHECK(link_success({1.0, 4}, 1.0) == 0.0);
  CHECK_THROWS_AS(link_success({0.0, 1}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(link_success({1.0, 0}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(link_success({1.0, 1}, 1.5), std::invalid_argument);
}

TEST_CASE("link success grows with attempts and shrinks with length") {
  double prev = 0.0;
  for (int n = 1; n < 10; ++n) {
    const double s = link_success({0.7, n}, 0.6);
    CHECK(s > prev);
    prev = s;
  }
  prev = 1.0;
  for (double l = 0.0; l < 300.0; l += 25.0) {
    const double s = fiber_link_success({1.0, 1}, 0.2, l);
    CHECK(s <= prev);
    prev = s;
  }
}

TEST_CASE("lightpath success") {
  const std::vector<double> lens = {0.95, 0.97};
  CHECK(std::fabs(lightpath_success(0.2, lens, 0.5) - 0.2 * 0.5 * 0.95 * 0.97) < 1e-15);
  CHECK_THROWS_AS(lightpath_success(0.2, {}, 0.5), std::invalid_argument);
}
