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

// Entanglement distribution planning over the augmented ground graph.
//
// Variables: a generation ratio g_mn in [0,1] per station pair with at least
// one physical or virtual edge, one swap rate y >= 0 per swap (k; m, n)
// consuming an mk- and a kn-ebit at k to produce an mn-ebit, and an expected
// rate zeta_i >= 0 per commodity. Per pair,
//
//   I(mn) = R_mn * g_mn + sum_k q_k * y(k; m, n)
//   O(mn) = sum of y over swaps that consume mn
//   I(mn) - O(mn) = sum of zeta_i over commodities on mn
//
// where R_mn is the summed capacity * success of the parallel edges. Writing
// the two equal per-side swap variables as one y keeps the half-sum form of
// the input rate exact.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qsatnet/lpsolve.hpp"
#include "qsatnet/metrics.hpp"
#include "qsatnet/netmodel.hpp"

namespace qsatnet::edt {

enum class Objective { kMaxTotal, kMaxTotalDemandCapped, kMaxMinFairness };

struct EdtOptions {
  Objective objective = Objective::kMaxTotal;
  int demand_window = 0;  // which z_i^t to use
  // Stations allowed to perform swaps; nullopt means every station.
  std::optional<std::vector<StationId>> repeaters;
  // Instantiate every triple instead of the reachable closure.
  bool dense = false;
};

struct SwapTriple {
  StationId k = 0;  // swapping station
  StationId m = 0;  // m < n
  StationId n = 0;
};

struct EdtModel {
  lp::Model model;
  std::vector<StationPair> gen_pairs;      // one g variable each
  std::vector<std::size_t> gen_vars;
  std::vector<SwapTriple> triples;
  std::vector<std::size_t> swap_vars;
  std::vector<std::size_t> zeta_vars;      // per commodity
  std::optional<std::size_t> lambda_var;   // fairness mode
  std::map<StationPair, std::size_t> conservation_rows;
};

struct Swap {
  SwapTriple at;
  double rate = 0.0;
};

struct EdtPlan {
  std::map<StationPair, double> generation;  // g_mn
  std::vector<Swap> swaps;                   // only y > 0
  std::vector<double> zeta;                  // per commodity
  std::map<StationPair, double> input;
  std::map<StationPair, double> output;
  double objective = 0.0;
  std::optional<double> fairness_level;

  double total_rate() const;
};

EdtModel build_edt(const AugmentedGraph& graph, const std::vector<Commodity>& commodities,
                   const EdtOptions& options);

// Reads the plan out of an optimal solution and re-checks swap symmetry and
// conservation. Throws std::runtime_error on a non-optimal status or a
// conservation residual above 1e-6.
EdtPlan extract_plan(const lp::Solution& solution, const EdtModel& built,
                     const AugmentedGraph& graph, const std::vector<Commodity>& commodities);

// Build, solve and extract. Fairness mode is lexicographic: the best common
// satisfaction level first, then the largest total at that level.
EdtPlan solve_edt(const AugmentedGraph& graph, const std::vector<Commodity>& commodities,
                  const EdtOptions& options);

struct BoundEntry {
  std::size_t commodity = 0;  // index, or commodities.size() for the total
  double zeta = 0.0;
  metrics::SummaryStats realized;
  bool exceeds = false;
};

struct BoundReport {
  bool insufficient_data = false;
  std::vector<BoundEntry> entries;  // per commodity, then the total

  bool ok() const;
};

// Per-slot delivered series per commodity (all of equal length). The 99%
// half-width comes from batch means, since inventory makes consecutive
// slots correlated.
BoundReport verify_upper_bound(const EdtPlan& plan,
                               const std::vector<std::vector<double>>& delivered_per_slot);

// Same check from precomputed statistics; the last entry of `stats` is the
// total when its size is zeta.size() + 1.
BoundReport verify_upper_bound(const EdtPlan& plan, std::span<const metrics::SummaryStats> stats);

}  // namespace qsatnet::edt
