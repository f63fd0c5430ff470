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

// Scenario assembly and the end-to-end driver: stations and fibers, gravity
// demands, the constellation with its visibility timeline, lightpath
// provisioning per planning period, EDT re-solves at every topology or
// demand change, and the slotted protocol run.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsatnet/channel.hpp"
#include "qsatnet/edt.hpp"
#include "qsatnet/lpp.hpp"
#include "qsatnet/metrics.hpp"
#include "qsatnet/netmodel.hpp"
#include "qsatnet/orbits.hpp"
#include "qsatnet/protosim.hpp"

namespace qsatnet::scenario {

enum class Algorithm { kQuesatD, kQuesatR, kGEdt };
enum class RepeaterMode { kCommoditiesOnly, kAllStations };
enum class LppSolver { kColumns, kArcs };

const char* to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);
const char* to_string(RepeaterMode mode);

struct StationSpec {
  GroundStation station;
  bool swap_success_given = false;  // otherwise drawn per seed
};

struct FiberSpec {
  StationId a = 0;
  StationId b = 0;
  std::optional<double> length_km;  // default: great-circle distance
  std::optional<double> gen_success;
  std::optional<int> capacity;
};

struct FiberConfig {
  bool complete = true;          // a fiber between every station pair
  std::vector<FiberSpec> links;  // used when not complete
  int capacity = 10;
  double gamma_db_per_km = 0.2;
  double distance_factor = 0.1;
};

struct SatelliteConfig {
  bool enabled = true;
  orbits::ConstellationSpec constellation;
  int lens_capacity = 4;
  double lens_success_min = 0.95;
  double lens_success_max = 0.98;
  double min_elevation_deg = 25.0;
  double uplink_survival = 0.2;
  double downlink_survival = 0.5;
  double alpha = 10.0;
};

struct CommodityConfig {
  int count = 15;
  std::optional<std::uint64_t> selection_seed;  // default: run seed
  std::vector<StationPair> pairs;               // explicit, overrides count
  double total_demand = 40000.0;
  double population_min = 70.0;
  double population_max = 300.0;
  std::vector<double> populations;              // fixed, overrides the draw
  // Total demand counts ebits per demand window; per-slot demand is z
  // divided by the number of slots in the window.
  bool demand_per_window = true;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::vector<StationSpec> stations;
  FiberConfig fibers;
  SatelliteConfig satellites;
  channel::GenerationParams generation;
  double swap_success_min = 0.85;
  double swap_success_max = 0.98;
  CommodityConfig commodities;
  double slot_s = 10.0;
  double horizon_s = 86400.0;
  double demand_period_s = 3600.0;
  double monitor_step_s = 600.0;
  double planning_period_s = 86400.0;
  std::vector<Algorithm> algorithms = {Algorithm::kQuesatD, Algorithm::kQuesatR,
                                       Algorithm::kGEdt};
  double delta = 0.5;
  RepeaterMode repeaters = RepeaterMode::kCommoditiesOnly;
  edt::Objective objective = edt::Objective::kMaxTotalDemandCapped;
  LppSolver lpp_solver = LppSolver::kColumns;
  long max_age_slots = -1;
  long warmup_slots = 0;
  int seeds = 3;
  std::uint64_t base_seed = 1;
};

// Problems with the configuration; empty when valid.
std::vector<std::string> check_config(const ScenarioConfig& config);

// Great-circle distance on the spherical Earth.
double great_circle_km(const GroundStation& a, const GroundStation& b);

// Pairwise great-circle distances times `factor`. Throws
// std::invalid_argument unless factor > 0.
std::map<StationPair, double> scale_distances(const std::vector<GroundStation>& stations,
                                              double factor);

struct DemandMatrix {
  std::vector<double> z;  // per commodity
};

// z_i proportional to pop(s_i) * pop(d_i), summing to total_demand.
DemandMatrix gravity_demands(const std::vector<double>& populations,
                             const std::vector<StationPair>& commodities, double total_demand);

// Everything that depends on (config, seed) but not on the algorithm.
struct World {
  std::uint64_t seed = 0;
  std::vector<GroundStation> stations;
  std::vector<FiberLink> fibers;
  orbits::Constellation constellation;
  orbits::VisibilityTimeline timeline;
  std::vector<Commodity> commodities;  // per-slot demand per window
  std::vector<std::vector<double>> populations;  // per window
  int windows = 0;
  long slots = 0;
};

World build_world(const ScenarioConfig& config, std::uint64_t seed);

std::vector<FiberLink> build_fibers(const ScenarioConfig& config,
                                    const std::vector<GroundStation>& stations);

// Lightpath provisioning inputs for [start_s, end_s).
lpp::LppInstance build_lpp_instance(const ScenarioConfig& config, const World& world,
                                    double start_s, double end_s);

struct ProvisionedPath {
  lpp::CandidateLightpath candidate;
  double start_s = 0.0;
  double end_s = 0.0;
  Lightpath lightpath;
};

struct PlanningRecord {
  double start_s = 0.0;
  double end_s = 0.0;
  std::size_t items = 0;
  std::size_t skipped_items = 0;
  std::size_t candidates = 0;
  lpp::LppSolution solution;
  lpp::PathSolverStats solver;
};

struct RunResult {
  Algorithm algorithm = Algorithm::kGEdt;
  std::uint64_t seed = 0;
  double average_throughput = 0.0;     // ebits per slot per commodity
  double satisfaction_ratio = 0.0;     // mean over demand windows
  double total_rate = 0.0;             // ebits per slot over all commodities
  double planned_total_rate = 0.0;     // slot-weighted mean of sum zeta
  std::vector<double> window_throughput;
  std::vector<double> window_satisfaction;
  std::vector<std::vector<double>> delivered;  // per commodity, per slot
  std::vector<ProvisionedPath> lightpaths;
  std::vector<PlanningRecord> planning;
  std::size_t edt_solves = 0;
  std::size_t plan_changes = 0;
};

// The relaxation and its decomposition for one planning period; shared by
// both rounding algorithms of a seed.
struct PeriodRelaxation {
  double start_s = 0.0;
  double end_s = 0.0;
  lpp::LppInstance instance;
  lpp::FlowSolution flows;
  std::vector<lpp::CandidateLightpath> candidates;
  lpp::PathSolverStats stats;
};

std::vector<PeriodRelaxation> relax_periods(const ScenarioConfig& config, const World& world);

// Algorithm-3 loop for one algorithm and seed.
RunResult run_once(const ScenarioConfig& config, const World& world, Algorithm algorithm,
                   const std::vector<PeriodRelaxation>& periods);
RunResult run_once(const ScenarioConfig& config, const World& world, Algorithm algorithm);

struct AlgorithmSummary {
  Algorithm algorithm = Algorithm::kGEdt;
  metrics::SummaryStats throughput;
  metrics::SummaryStats satisfaction;
  std::vector<double> window_throughput;     // mean over seeds
  std::vector<double> window_satisfaction;
};

struct ExperimentReport {
  std::string name;
  std::vector<std::uint64_t> seeds;
  std::vector<RunResult> runs;  // seed-major, algorithms in config order
  std::vector<AlgorithmSummary> summaries;

  const AlgorithmSummary& summary(Algorithm algorithm) const;
};

// Every configured algorithm over seeds base_seed .. base_seed + seeds - 1.
// Seeds run concurrently; the report does not depend on scheduling.
ExperimentReport run_experiment(const ScenarioConfig& config);

struct SweepPoint {
  double value = 0.0;
  ExperimentReport report;
};

// Re-runs the experiment with `parameter` set to each value. Supported
// parameters: distance_factor, commodities, delta, total_demand.
std::vector<SweepPoint> run_sweep(const ScenarioConfig& config, const std::string& parameter,
                                  const std::vector<double>& values);

void apply_parameter(ScenarioConfig& config, const std::string& parameter, double value);

}  // namespace qsatnet::scenario
