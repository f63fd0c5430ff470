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
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qsatnet/edt.hpp"

using namespace qsatnet;
using namespace qsatnet::edt;

namespace {

struct Link {
  StationId a, b;
  double capacity, success;
};

AugmentedGraph make_graph(const std::vector<double>& swap, const std::vector<Link>& links) {
  std::vector<GroundStation> st;
  for (std::size_t i = 0; i < swap.size(); ++i) st.push_back({"s" + std::to_string(i), 0, 0, swap[i]});
  std::vector<AugmentedEdge> edges;
  for (std::size_t i = 0; i < links.size(); ++i) {
    edges.push_back({StationPair::make(links[i].a, links[i].b), EdgeKind::kFiber, links[i].capacity,
                     links[i].success, i});
  }
  return AugmentedGraph(st, edges);
}

Commodity commodity(std::size_t id, StationId s, StationId d, double z = 0.0) {
  Commodity c;
  c.id = id;
  c.source = s;
  c.dest = d;
  c.demand_series[0] = z;
  return c;
}

// Chain 0 - 1 - ... - L with the given link rates (capacity 1).
AugmentedGraph chain(const std::vector<double>& interior_swap, const std::vector<double>& rate) {
  std::vector<double> swap = {1.0};
  swap.insert(swap.end(), interior_swap.begin(), interior_swap.end());
  swap.push_back(1.0);
  std::vector<Link> links;
  for (std::size_t i = 0; i < rate.size(); ++i) links.push_back({i, i + 1, rate[i], 1.0});
  return make_graph(swap, links);
}

}  // namespace

TEST_CASE("single link delivers capacity times success") {
  const auto g = make_graph({1, 1}, {{0, 1, 10, 0.8}});
  const EdtPlan p = solve_edt(g, {commodity(0, 0, 1)}, {});
  CHECK(p.zeta[0] == doctest::Approx(8.0));
  CHECK(p.generation.at({0, 1}) == doctest::Approx(1.0));
  CHECK(p.swaps.empty());
}

TEST_CASE("two-link chain") {
  const auto g = make_graph({1, 0.9, 1}, {{0, 1, 10, 0.8}, {1, 2, 10, 0.8}});
  const EdtPlan p = solve_edt(g, {commodity(0, 0, 2)}, {});
  CHECK(p.zeta[0] == doctest::Approx(7.2));
  REQUIRE(p.swaps.size() == 1);
  CHECK(p.swaps[0].at.k == 1);
  CHECK(p.swaps[0].rate == doctest::Approx(8.0));
  CHECK(p.input.at({0, 2}) == doctest::Approx(7.2));
  CHECK(p.output.at({0, 1}) == doctest::Approx(8.0));
}

TEST_CASE("chains of two links match the bottleneck rate") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> q(0.5, 1.0), c(1.0, 10.0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::vector<double> swap = {q(rng)};
    const std::vector<double> rate = {c(rng), c(rng)};
    const auto g = chain(swap, rate);
    const EdtPlan p = solve_edt(g, {commodity(0, 0, 2)}, {});
    CHECK(p.zeta[0] == doctest::Approx(oracles::chain_bottleneck_rate(swap, rate)).epsilon(1e-9));
  }
}

TEST_CASE("longer chains can beat the bottleneck rate") {
  // Swap 0-1-2 first at full rate, then spend only what the weak link needs.
  const auto g = chain({0.5, 0.5}, {9, 9, 1});
  const EdtPlan p = solve_edt(g, {commodity(0, 0, 3)}, {});
  CHECK(oracles::chain_bottleneck_rate({0.5, 0.5}, {9, 9, 1}) == doctest::Approx(0.25));
  CHECK(p.zeta[0] == doctest::Approx(0.5));

  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> q(0.5, 1.0), c(1.0, 10.0);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t links = 3 + rep % 3;
    std::vector<double> swap(links - 1), rate(links);
    for (double& s : swap) s = q(rng);
    for (double& r : rate) r = c(rng);
    const EdtPlan plan = solve_edt(chain(swap, rate), {commodity(0, 0, links)}, {});
    CHECK(plan.zeta[0] >= oracles::chain_bottleneck_rate(swap, rate) - 1e-9);
    // Equal rates on three links leave nothing to gain; four or more links
    // gain from a balanced swap tree.
    std::vector<double> equal(links, rate[0]);
    const EdtPlan flat = solve_edt(chain(swap, equal), {commodity(0, 0, links)}, {});
    if (links == 3) {
      CHECK(flat.zeta[0] == doctest::Approx(oracles::chain_bottleneck_rate(swap, equal)).epsilon(1e-9));
    } else {
      CHECK(flat.zeta[0] >= oracles::chain_bottleneck_rate(swap, equal) - 1e-9);
    }
  }
  const EdtPlan tree = solve_edt(chain({0.6, 0.7, 0.8}, {5, 5, 5, 5}), {commodity(0, 0, 4)}, {});
  CHECK(tree.zeta[0] == doctest::Approx(0.7 * 0.6 * 5));
}

TEST_CASE("optimum matches basis enumeration on small graphs") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> q(0.6, 1.0), c(1.0, 10.0), z(0.0, 6.0), u(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 3 + rep % 2;
    std::vector<double> swap(n);
    for (double& s : swap) s = q(rng);
    std::vector<Link> links;
    for (StationId a = 0; a < n; ++a) {
      for (StationId b = a + 1; b < n; ++b) {
        if (u(rng) < 0.7) links.push_back({a, b, std::floor(c(rng)), q(rng)});
      }
    }
    const auto g = make_graph(swap, links);
    std::vector<Commodity> coms = {commodity(0, 0, n - 1, z(rng)), commodity(1, 1, 2, z(rng))};
    const bool capped = rep % 3 == 0;
    EdtOptions opt;
    opt.objective = capped ? Objective::kMaxTotalDemandCapped : Objective::kMaxTotal;
    const EdtPlan p = solve_edt(g, coms, opt);
    CAPTURE(rep);
    CHECK(p.total_rate() == doctest::Approx(oracles::edt_basis_enumeration(g, coms, capped)).epsilon(1e-7));
    opt.dense = true;
    CHECK(solve_edt(g, coms, opt).total_rate() == doctest::Approx(p.total_rate()).epsilon(1e-9));
  }
}

TEST_CASE("demand cap") {
  const auto g = make_graph({1, 1}, {{0, 1, 10, 0.8}});
  EdtOptions opt;
  opt.objective = Objective::kMaxTotalDemandCapped;
  const EdtPlan p = solve_edt(g, {commodity(0, 0, 1, 3.0)}, opt);
  CHECK(p.zeta[0] == doctest::Approx(3.0));
  CHECK(p.generation.at({0, 1}) == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("max-min fairness then total") {
  // Two commodities share link 1-2; the second also has a private link.
  const auto g = make_graph({1, 1, 1}, {{0, 1, 10, 1.0}, {1, 2, 4, 1.0}});
  EdtOptions opt;
  opt.objective = Objective::kMaxMinFairness;
  const std::vector<Commodity> coms = {commodity(0, 0, 2, 8.0), commodity(1, 1, 2, 2.0)};
  const EdtPlan p = solve_edt(g, coms, opt);
  // lambda * 8 + lambda * 2 <= 4 -> lambda = 0.4; nothing left for the total.
  REQUIRE(p.fairness_level);
  CHECK(*p.fairness_level == doctest::Approx(0.4));
  CHECK(p.zeta[0] == doctest::Approx(3.2));
  CHECK(p.zeta[1] == doctest::Approx(0.8));

  // A spare private link raises the total without touching the level.
  const auto g2 = make_graph({1, 1, 1}, {{0, 1, 10, 1.0}, {1, 2, 4, 1.0}, {0, 2, 1, 1.0}});
  const EdtPlan p2 = solve_edt(g2, coms, opt);
  CHECK(*p2.fairness_level >= 0.4 - 1e-9);
  CHECK(p2.total_rate() >= 5.0 - 1e-7);
}

TEST_CASE("restricting repeaters never helps") {
  const auto g = make_graph({1, 0.9, 0.9, 1}, {{0, 1, 5, 0.9}, {1, 2, 5, 0.9}, {2, 3, 5, 0.9}, {0, 2, 2, 0.5}});
  const std::vector<Commodity> coms = {commodity(0, 0, 3)};
  const double all = solve_edt(g, coms, {}).total_rate();
  EdtOptions only;
  only.repeaters = std::vector<StationId>{0, 2, 3};
  const double some = solve_edt(g, coms, only).total_rate();
  CHECK(some <= all + 1e-9);
  CHECK(some == doctest::Approx(0.9 * std::min(1.0, 4.5)));
  only.repeaters = std::vector<StationId>{0, 3};
  CHECK(solve_edt(g, coms, only).total_rate() == 0.0);
}

TEST_CASE("bad commodities are rejected") {
  const auto g = make_graph({1, 1}, {{0, 1, 1, 1}});
  CHECK_THROWS_AS(build_edt(g, {commodity(0, 0, 0)}, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_edt(g, {commodity(0, 0, 5)}, {}), std::invalid_argument);
}

TEST_CASE("upper bound check") {
  EdtPlan plan;
  plan.zeta = {1.0, 2.0};
  CHECK(verify_upper_bound(plan, std::vector<std::vector<double>>{{1.0}, {2.0}}).insufficient_data);
  std::vector<std::vector<double>> ok(2, std::vector<double>(100));
  for (int t = 0; t < 100; ++t) {
    ok[0][t] = t % 2;
    ok[1][t] = 2.0 * (t % 2);
  }
  const BoundReport r = verify_upper_bound(plan, ok);
  CHECK(r.ok());
  CHECK(r.entries.size() == 3);
  CHECK(r.entries[2].zeta == 3.0);
  for (auto& v : ok[1]) v = 5.0;
  CHECK(!verify_upper_bound(plan, ok).ok());
}
