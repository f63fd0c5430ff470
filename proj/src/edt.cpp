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

#include "qsatnet/edt.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace qsatnet::edt {
namespace {

std::string pair_name(StationPair p) {
  return std::to_string(p.a) + "_" + std::to_string(p.b);
}

}  // namespace

double EdtPlan::total_rate() const {
  double s = 0.0;
  for (double z : zeta) s += z;
  return s;
}

EdtModel build_edt(const AugmentedGraph& graph, const std::vector<Commodity>& commodities,
                   const EdtOptions& options) {
  const std::size_t n = graph.station_count();
  for (const Commodity& c : commodities) {
    if (c.source >= n || c.dest >= n || c.source == c.dest) {
      throw std::invalid_argument("commodity " + std::to_string(c.id) +
                                  " does not name two distinct graph stations");
    }
  }
  std::vector<bool> repeater(n, options.repeaters ? false : true);
  if (options.repeaters) {
    for (StationId k : *options.repeaters) {
      if (k < n) repeater[k] = true;
    }
  }

  EdtModel out;
  lp::Model& m = out.model;

  // Pairs that can hold ebits: physical/virtual edges, closed under swapping.
  std::set<StationPair> producible;
  for (const StationPair& p : graph.connected_pairs()) {
    if (graph.expected_rate(p) > 0.0) producible.insert(p);
  }
  if (options.dense) {
    for (StationId a = 0; a < n; ++a)
      for (StationId b = a + 1; b < n; ++b) producible.insert({a, b});
  } else {
    bool grew = true;
    while (grew) {
      grew = false;
      for (StationId k = 0; k < n; ++k) {
        if (!repeater[k]) continue;
        for (StationId a = 0; a < n; ++a) {
          if (a == k || !producible.count(StationPair::make(a, k))) continue;
          for (StationId b = a + 1; b < n; ++b) {
            if (b == k || !producible.count(StationPair::make(k, b))) continue;
            grew = producible.insert({a, b}).second || grew;
          }
        }
      }
    }
  }

  for (const StationPair& p : producible) {
    if (graph.expected_rate(p) <= 0.0) continue;
    out.gen_pairs.push_back(p);
    out.gen_vars.push_back(m.add_variable("g_" + pair_name(p), 0.0, 1.0, 0.0));
  }
  for (StationId k = 0; k < n; ++k) {
    if (!repeater[k]) continue;
    for (StationId a = 0; a < n; ++a) {
      if (a == k || !producible.count(StationPair::make(a, k))) continue;
      for (StationId b = a + 1; b < n; ++b) {
        if (b == k || !producible.count(StationPair::make(k, b))) continue;
        out.triples.push_back({k, a, b});
        out.swap_vars.push_back(m.add_variable(
            "y_" + std::to_string(k) + "_" + std::to_string(a) + "_" + std::to_string(b)));
      }
    }
  }
  for (const Commodity& c : commodities) {
    out.zeta_vars.push_back(m.add_variable("zeta_" + std::to_string(c.id)));
  }

  std::map<StationPair, std::vector<lp::Term>> rows;
  for (const StationPair& p : producible) rows[p];
  for (std::size_t i = 0; i < out.gen_pairs.size(); ++i) {
    rows[out.gen_pairs[i]].push_back({out.gen_vars[i], graph.expected_rate(out.gen_pairs[i])});
  }
  for (std::size_t t = 0; t < out.triples.size(); ++t) {
    const SwapTriple& s = out.triples[t];
    const std::size_t y = out.swap_vars[t];
    rows[{s.m, s.n}].push_back({y, graph.stations()[s.k].swap_success});
    rows[StationPair::make(s.m, s.k)].push_back({y, -1.0});
    rows[StationPair::make(s.k, s.n)].push_back({y, -1.0});
  }
  for (std::size_t i = 0; i < commodities.size(); ++i) {
    rows[commodities[i].pair()].push_back({out.zeta_vars[i], -1.0});
  }
  for (auto& [p, terms] : rows) {
    out.conservation_rows[p] =
        m.add_constraint("cons_" + pair_name(p), std::move(terms), lp::Relation::kEqual, 0.0);
  }

  switch (options.objective) {
    case Objective::kMaxTotal:
      for (std::size_t v : out.zeta_vars) m.set_objective(v, 1.0);
      break;
    case Objective::kMaxTotalDemandCapped:
      for (std::size_t i = 0; i < commodities.size(); ++i) {
        m.set_objective(out.zeta_vars[i], 1.0);
        m.set_bounds(out.zeta_vars[i], 0.0, commodities[i].demand_at(options.demand_window));
      }
      break;
    case Objective::kMaxMinFairness: {
      const std::size_t lam = m.add_variable("lambda", 0.0, 1.0, 1.0);
      out.lambda_var = lam;
      for (std::size_t i = 0; i < commodities.size(); ++i) {
        const double z = commodities[i].demand_at(options.demand_window);
        m.set_bounds(out.zeta_vars[i], 0.0, z);
        if (z > 0.0) {
          m.add_constraint("fair_" + std::to_string(commodities[i].id),
                           {{out.zeta_vars[i], 1.0}, {lam, -z}}, lp::Relation::kGreaterEqual, 0.0);
        }
      }
      break;
    }
  }
  return out;
}

EdtPlan extract_plan(const lp::Solution& solution, const EdtModel& built,
                     const AugmentedGraph& graph, const std::vector<Commodity>& commodities) {
  if (solution.status != lp::Status::kOptimal) {
    throw std::runtime_error(std::string("EDT solve did not reach optimality: ") +
                             lp::to_string(solution.status));
  }
  const auto& x = solution.values;
  EdtPlan plan;
  plan.objective = solution.objective;
  for (std::size_t i = 0; i < built.gen_pairs.size(); ++i) {
    const StationPair p = built.gen_pairs[i];
    const double g = x[built.gen_vars[i]];
    plan.generation[p] = g;
    plan.input[p] += graph.expected_rate(p) * g;
  }
  for (std::size_t t = 0; t < built.triples.size(); ++t) {
    const SwapTriple& s = built.triples[t];
    const double y = x[built.swap_vars[t]];
    if (y <= 0.0) continue;
    plan.swaps.push_back({s, y});
    // The two per-side variables share one value, so the half-sum is y.
    plan.input[{s.m, s.n}] += 0.5 * (y + y) * graph.stations()[s.k].swap_success;
    plan.output[StationPair::make(s.m, s.k)] += y;
    plan.output[StationPair::make(s.k, s.n)] += y;
  }
  std::map<StationPair, double> delivered;
  for (std::size_t i = 0; i < commodities.size(); ++i) {
    const double z = x[built.zeta_vars[i]];
    plan.zeta.push_back(z);
    delivered[commodities[i].pair()] += z;
  }
  if (built.lambda_var) plan.fairness_level = x[*built.lambda_var];
  for (const auto& [p, row] : built.conservation_rows) {
    (void)row;
    const double in = plan.input.count(p) ? plan.input.at(p) : 0.0;
    const double out = plan.output.count(p) ? plan.output.at(p) : 0.0;
    const double d = delivered.count(p) ? delivered.at(p) : 0.0;
    const double residual = std::fabs(in - out - d);
    if (residual > 1e-6) {
      throw std::runtime_error("EDT plan violates conservation on pair " +
                               std::to_string(p.a) + "-" + std::to_string(p.b) +
                               " by " + std::to_string(residual));
    }
  }
  return plan;
}

EdtPlan solve_edt(const AugmentedGraph& graph, const std::vector<Commodity>& commodities,
                  const EdtOptions& options) {
  EdtModel built = build_edt(graph, commodities, options);
  lp::Solution sol = lp::solve(built.model);
  if (options.objective == Objective::kMaxMinFairness && sol.status == lp::Status::kOptimal) {
    const double level = sol.values[*built.lambda_var];
    built.model.set_bounds(*built.lambda_var, std::max(0.0, level - 1e-9), 1.0);
    built.model.set_objective(*built.lambda_var, 0.0);
    for (std::size_t v : built.zeta_vars) built.model.set_objective(v, 1.0);
    sol = lp::solve(built.model);
  }
  return extract_plan(sol, built, graph, commodities);
}

bool BoundReport::ok() const {
  if (insufficient_data) return false;
  for (const BoundEntry& e : entries) {
    if (e.exceeds) return false;
  }
  return true;
}

BoundReport verify_upper_bound(const EdtPlan& plan, std::span<const metrics::SummaryStats> stats) {
  BoundReport report;
  if (stats.size() != plan.zeta.size() && stats.size() != plan.zeta.size() + 1) {
    throw std::invalid_argument("verify_upper_bound: one statistic per commodity expected");
  }
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (stats[i].count == 0) {
      report.insufficient_data = true;
      return report;
    }
    BoundEntry e;
    e.commodity = i;
    e.zeta = i < plan.zeta.size() ? plan.zeta[i] : plan.total_rate();
    e.realized = stats[i];
    e.exceeds = stats[i].mean > e.zeta + stats[i].ci99_half_width + 1e-12;
    report.entries.push_back(e);
  }
  return report;
}

BoundReport verify_upper_bound(const EdtPlan& plan,
                               const std::vector<std::vector<double>>& delivered_per_slot) {
  if (delivered_per_slot.size() != plan.zeta.size()) {
    throw std::invalid_argument("verify_upper_bound: one series per commodity expected");
  }
  const std::size_t slots = delivered_per_slot.empty() ? 0 : delivered_per_slot.front().size();
  for (const auto& s : delivered_per_slot) {
    if (s.size() != slots) throw std::invalid_argument("verify_upper_bound: ragged series");
  }
  BoundReport report;
  if (slots < 2) {
    report.insufficient_data = true;
    return report;
  }
  std::vector<metrics::SummaryStats> stats;
  std::vector<double> total(slots, 0.0);
  for (const auto& s : delivered_per_slot) {
    stats.push_back(metrics::batch_means(s));
    for (std::size_t t = 0; t < slots; ++t) total[t] += s[t];
  }
  stats.push_back(metrics::batch_means(total));
  return verify_upper_bound(plan, std::span<const metrics::SummaryStats>(stats));
}

}  // namespace qsatnet::edt
