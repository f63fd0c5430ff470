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

// Lightpath provisioning: the flow relaxation over commodity epochs, path
// decomposition of its flows, randomized and threshold rounding, and pruning
// back to lens capacity.
//
// An item is one (commodity, epoch) pair with its candidate source and
// destination satellite sets. Flow leaves a source candidate without loss,
// is attenuated by q^s at every satellite it enters, and is counted as
// received at a destination candidate after that satellite's attenuation.
// For a path v0 .. vk the received fraction of the injected flow h is
// therefore G = q(v1) * ... * q(vk).
//
// Lens load follows the relaxation: every ISL a lightpath uses occupies one
// lens set on each of its two satellites, so an interior satellite carries
// two units and each end one unit. Capacity is checked at every instant at
// which some item starts; loads are constant between those instants.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qsatnet/lpsolve.hpp"
#include "qsatnet/netmodel.hpp"

namespace qsatnet::lpp {

struct Item {
  std::size_t commodity = 0;
  int epoch = 0;
  double start_s = 0.0;
  double end_s = 0.0;
  double weight = 1.0;  // epoch duration in slots
  std::vector<SatelliteId> sources;
  std::vector<SatelliteId> dests;
};

struct LppInstance {
  std::vector<Satellite> satellites;  // lens_capacity may be 0 here
  std::vector<Isl> isls;
  double alpha = 10.0;
  std::vector<Item> items;
};

// Throws std::invalid_argument on dangling satellite ids, non-positive alpha
// or weights, or probabilities outside (0, 1].
void validate(const LppInstance& instance);

// True when the item has a source candidate and a destination candidate not
// also in the source set.
bool item_usable(const Item& item);

// Sorted distinct item start times.
std::vector<double> capacity_instants(const LppInstance& instance);

// Directed flows of one item, in injected (pre-attenuation) units per edge.
struct ItemFlow {
  std::map<std::pair<SatelliteId, SatelliteId>, double> flow;
  std::map<SatelliteId, double> supply;  // net originating flow per source
  std::map<SatelliteId, double> sink;    // received flow per destination
  double eta = 0.0;
};

struct FlowSolution {
  double objective = 0.0;          // sum of weight * eta
  std::vector<ItemFlow> flows;     // per item
  std::vector<std::size_t> skipped_items;
};

struct Relaxation {
  lp::Model model;
  std::vector<std::size_t> skipped_items;
  // Variable indices per item (empty for skipped items).
  std::vector<std::vector<std::size_t>> x_vars;  // per ISL
  std::vector<std::vector<std::size_t>> f_fwd;   // per ISL, a -> b
  std::vector<std::vector<std::size_t>> f_rev;   // per ISL, b -> a
  std::vector<std::map<SatelliteId, std::size_t>> supply_vars;
  std::vector<std::map<SatelliteId, std::size_t>> sink_vars;
  std::vector<std::size_t> eta_vars;
};

// The full arc formulation. Items without usable candidates are skipped and
// listed. Suited to small instances; see solve_relaxation_paths for scale.
Relaxation build_relaxation(const LppInstance& instance);

FlowSolution read_flows(const lp::Solution& solution, const Relaxation& relaxation,
                        const LppInstance& instance);

// build_relaxation + solve + read_flows.
FlowSolution solve_relaxation_arc(const LppInstance& instance);

struct PathSolverOptions {
  int max_rounds = 20000;
  double tolerance = 1e-9;
};

struct PathSolverStats {
  int rounds = 0;
  std::size_t columns = 0;
  std::size_t rows = 0;
  std::size_t blocks = 0;
  std::size_t largest_block_rows = 0;
};

// Exact optimum of the same relaxation by column generation over lightpath
// flows, with edge-capacity and lens rows added only when violated or
// needed for pricing, and items solved in independent blocks until a lens
// row couples them.
FlowSolution solve_relaxation_paths(const LppInstance& instance,
                                    const PathSolverOptions& options = {},
                                    PathSolverStats* stats = nullptr);

struct CandidateLightpath {
  std::size_t item = 0;
  std::size_t commodity = 0;
  int epoch = 0;
  std::vector<SatelliteId> sequence;
  double injected = 0.0;  // h, flow leaving the source satellite
  double xhat = 0.0;      // fractional selection value, h / alpha capped at 1
  double gain = 0.0;      // G
  double received = 0.0;  // h * G
  double value = 0.0;     // alpha * G * weight, objective if selected
};

double path_gain(const LppInstance& instance, const std::vector<SatelliteId>& sequence);

struct DecompositionReport {
  std::vector<double> residual_flow;  // per item, discarded after stripping
  bool cyclic_residual = false;
};

// Path stripping over positive-flow edges, depth first with ascending
// satellite ids as tie-break.
std::vector<CandidateLightpath> decompose_flows(const FlowSolution& solution,
                                                const LppInstance& instance,
                                                DecompositionReport* report = nullptr);

struct LppSolution {
  std::vector<CandidateLightpath> selected;
  double sol_lp = 0.0;
  double sol_alg = 0.0;               // after pruning
  double pre_prune_objective = 0.0;
  std::size_t pre_prune_count = 0;
  std::size_t pruned = 0;
};

// Lens load per (satellite, instant) of a set of lightpaths.
std::map<std::pair<SatelliteId, double>, double> lens_load(
    const std::vector<CandidateLightpath>& paths, const LppInstance& instance);

std::size_t count_capacity_violations(const std::vector<CandidateLightpath>& paths,
                                      const LppInstance& instance);

// Drops lightpaths until every item's lightpaths are ISL-disjoint and every
// lens capacity holds. Removal order is lowest received rate (alpha * G)
// first, later candidates first on ties.
LppSolution prune_to_capacity(std::vector<CandidateLightpath> selection,
                              const LppInstance& instance);

LppSolution round_randomized(const std::vector<CandidateLightpath>& candidates,
                             const LppInstance& instance, std::uint64_t seed,
                             double sol_lp = 0.0);

// delta is clamped to (0, 1].
LppSolution round_deterministic(const std::vector<CandidateLightpath>& candidates,
                                const LppInstance& instance, double delta,
                                double sol_lp = 0.0);

}  // namespace qsatnet::lpp
