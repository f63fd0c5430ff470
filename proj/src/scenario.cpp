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

#include "qsatnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qsatnet/rng.hpp"

namespace qsatnet::scenario {
namespace {

// Stream keys for the per-seed draws.
constexpr std::uint64_t kSwapKey = 0x7377617000000000ULL;
constexpr std::uint64_t kLensKey = 0x6c656e7300000000ULL;
constexpr std::uint64_t kPopKey = 0x706f700000000000ULL;
constexpr std::uint64_t kPickKey = 0x7069636b00000000ULL;
constexpr std::uint64_t kRoundKey = 0x726f756e64000000ULL;

double uniform_in(SplitMix64 rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

long slot_at(double time_s, double slot_s) {
  return static_cast<long>(std::ceil(time_s / slot_s - 1e-9));
}

std::vector<StationPair> pick_pairs(std::size_t stations, int count, std::uint64_t seed) {
  std::vector<StationPair> all;
  for (StationId a = 0; a < stations; ++a) {
    for (StationId b = a + 1; b < stations; ++b) all.push_back({a, b});
  }
  if (count < 0 || static_cast<std::size_t>(count) > all.size()) {
    throw std::invalid_argument("more commodities requested than station pairs");
  }
  SplitMix64 rng = substream(seed, 0, kPickKey);
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform() * static_cast<double>(all.size() - i));
    std::swap(all[i], all[j]);
  }
  all.resize(static_cast<std::size_t>(count));
  std::sort(all.begin(), all.end());
  return all;
}

edt::EdtOptions edt_options(const ScenarioConfig& config, const World& world, int window) {
  edt::EdtOptions opt;
  opt.objective = config.objective;
  opt.demand_window = window;
  if (config.repeaters == RepeaterMode::kCommoditiesOnly) {
    std::set<StationId> ends;
    for (const Commodity& c : world.commodities) {
      ends.insert(c.source);
      ends.insert(c.dest);
    }
    opt.repeaters = std::vector<StationId>(ends.begin(), ends.end());
  }
  return opt;
}

}  // namespace

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kQuesatD: return "quesat-d";
    case Algorithm::kQuesatR: return "quesat-r";
    case Algorithm::kGEdt: return "g-edt";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "quesat-d") return Algorithm::kQuesatD;
  if (name == "quesat-r") return Algorithm::kQuesatR;
  if (name == "g-edt") return Algorithm::kGEdt;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

const char* to_string(RepeaterMode mode) {
  return mode == RepeaterMode::kAllStations ? "all_stations" : "commodities_only";
}

std::vector<std::string> check_config(const ScenarioConfig& c) {
  std::vector<std::string> bad;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(what);
  };
  need(c.stations.size() >= 2, "at least two stations are required");
  for (std::size_t i = 0; i < c.stations.size(); ++i) {
    const GroundStation& s = c.stations[i].station;
    need(std::fabs(s.latitude_deg) <= 90.0, "station " + s.id + ": latitude out of range");
    need(std::fabs(s.longitude_deg) <= 180.0, "station " + s.id + ": longitude out of range");
    need(!c.stations[i].swap_success_given || (s.swap_success > 0.0 && s.swap_success <= 1.0),
         "station " + s.id + ": swap_success must be in (0, 1]");
    for (std::size_t j = 0; j < i; ++j) {
      need(c.stations[j].station.id != s.id, "duplicate station id " + s.id);
    }
  }
  need(c.swap_success_min > 0.0 && c.swap_success_min <= c.swap_success_max &&
           c.swap_success_max <= 1.0,
       "swap success range must satisfy 0 < min <= max <= 1");
  need(c.fibers.capacity >= 0, "fiber capacity must be non-negative");
  need(c.fibers.gamma_db_per_km > 0.0, "fiber attenuation must be positive");
  need(c.fibers.distance_factor > 0.0, "distance factor must be positive");
  for (const FiberSpec& f : c.fibers.links) {
    need(f.a < c.stations.size() && f.b < c.stations.size() && f.a != f.b,
         "fiber endpoints must be two distinct stations");
    need(!f.gen_success || (*f.gen_success >= 0.0 && *f.gen_success <= 1.0),
         "fiber gen_success must be in [0, 1]");
    need(!f.length_km || *f.length_km >= 0.0, "fiber length must be non-negative");
    need(!f.capacity || *f.capacity >= 0, "fiber capacity must be non-negative");
  }
  need(c.generation.q_gen > 0.0 && c.generation.q_gen <= 1.0, "q_gen must be in (0, 1]");
  need(c.generation.n_attempts >= 1, "n_attempts must be at least 1");
  const SatelliteConfig& s = c.satellites;
  if (s.enabled) {
    try {
      orbits::validate(s.constellation);
    } catch (const std::exception& e) {
      bad.push_back(e.what());
    }
    need(s.lens_capacity >= 0, "lens capacity must be non-negative");
    need(s.lens_success_min > 0.0 && s.lens_success_min <= s.lens_success_max &&
             s.lens_success_max <= 1.0,
         "lens success range must satisfy 0 < min <= max <= 1");
    need(s.uplink_survival > 0.0 && s.uplink_survival <= 1.0, "uplink survival must be in (0, 1]");
    need(s.downlink_survival > 0.0 && s.downlink_survival <= 1.0,
         "downlink survival must be in (0, 1]");
    need(s.alpha > 0.0, "alpha must be positive");
    need(s.min_elevation_deg >= -90.0 && s.min_elevation_deg <= 90.0,
         "minimum elevation must be in [-90, 90]");
  }
  const CommodityConfig& k = c.commodities;
  const std::size_t n = c.stations.size();
  if (k.pairs.empty()) {
    need(k.count >= 1, "at least one commodity is required");
    need(n < 2 || static_cast<std::size_t>(k.count) <= n * (n - 1) / 2,
         "more commodities than station pairs");
  }
  for (const StationPair& p : k.pairs) {
    need(p.a < n && p.b < n && p.a != p.b, "commodity endpoints must be two distinct stations");
  }
  need(k.total_demand > 0.0, "total demand must be positive");
  need(k.population_min > 0.0 && k.population_min <= k.population_max,
       "population range must satisfy 0 < min <= max");
  need(k.populations.empty() || k.populations.size() == n,
       "populations must list one value per station");
  for (double p : k.populations) need(p > 0.0, "populations must be positive");
  need(c.slot_s > 0.0, "slot length must be positive");
  need(c.horizon_s >= c.slot_s, "horizon must cover at least one slot");
  need(c.demand_period_s > 0.0, "demand period must be positive");
  need(c.monitor_step_s > 0.0, "monitoring step must be positive");
  need(c.planning_period_s > 0.0, "planning period must be positive");
  need(!c.algorithms.empty(), "at least one algorithm is required");
  need(c.delta > 0.0, "delta must be positive");
  need(c.seeds >= 1, "at least one seed is required");
  need(c.warmup_slots >= 0, "warm-up must be non-negative");
  for (Algorithm a : c.algorithms) {
    need(a == Algorithm::kGEdt || s.enabled, std::string(to_string(a)) + " needs satellites");
  }
  return bad;
}

double great_circle_km(const GroundStation& a, const GroundStation& b) {
  constexpr double deg = std::numbers::pi / 180.0;
  const double p1 = a.latitude_deg * deg;
  const double p2 = b.latitude_deg * deg;
  const double dp = p2 - p1;
  const double dl = (b.longitude_deg - a.longitude_deg) * deg;
  const double h = std::sin(dp / 2) * std::sin(dp / 2) +
                   std::cos(p1) * std::cos(p2) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2.0 * orbits::kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

std::map<StationPair, double> scale_distances(const std::vector<GroundStation>& stations,
                                              double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("scale_distances: factor must be positive");
  std::map<StationPair, double> out;
  for (StationId a = 0; a < stations.size(); ++a) {
    for (StationId b = a + 1; b < stations.size(); ++b) {
      out[{a, b}] = great_circle_km(stations[a], stations[b]) * factor;
    }
  }
  return out;
}

DemandMatrix gravity_demands(const std::vector<double>& populations,
                             const std::vector<StationPair>& commodities, double total_demand) {
  DemandMatrix out;
  out.z.resize(commodities.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < commodities.size(); ++i) {
    const StationPair& p = commodities[i];
    if (p.a >= populations.size() || p.b >= populations.size()) {
      throw std::invalid_argument("gravity_demands: station without population");
    }
    if (!(populations[p.a] > 0.0) || !(populations[p.b] > 0.0)) {
      throw std::invalid_argument("gravity_demands: populations must be positive");
    }
    out.z[i] = populations[p.a] * populations[p.b];
    sum += out.z[i];
  }
  for (double& z : out.z) z = z / sum * total_demand;
  return out;
}

std::vector<FiberLink> build_fibers(const ScenarioConfig& config,
                                    const std::vector<GroundStation>& stations) {
  const FiberConfig& fc = config.fibers;
  std::vector<FiberLink> out;
  auto make = [&](StationId a, StationId b, std::optional<double> length,
                  std::optional<double> success, std::optional<int> capacity) {
    FiberLink f;
    f.endpoints = StationPair::make(a, b);
    f.capacity = capacity.value_or(fc.capacity);
    f.length_km = length.value_or(great_circle_km(stations[a], stations[b])) * fc.distance_factor;
    f.gen_success = success ? *success
                            : channel::fiber_link_success(config.generation, fc.gamma_db_per_km,
                                                          f.length_km);
    out.push_back(f);
  };
  if (fc.complete) {
    for (StationId a = 0; a < stations.size(); ++a) {
      for (StationId b = a + 1; b < stations.size(); ++b) make(a, b, {}, {}, {});
    }
  } else {
    for (const FiberSpec& s : fc.links) make(s.a, s.b, s.length_km, s.gen_success, s.capacity);
  }
  return out;
}

World build_world(const ScenarioConfig& config, std::uint64_t seed) {
  if (auto bad = check_config(config); !bad.empty()) {
    throw std::invalid_argument("scenario '" + config.name + "': " + bad.front());
  }
  World w;
  w.seed = seed;
  for (std::size_t i = 0; i < config.stations.size(); ++i) {
    GroundStation s = config.stations[i].station;
    if (!config.stations[i].swap_success_given) {
      s.swap_success = uniform_in(substream(seed, 0, kSwapKey + i), config.swap_success_min,
                                  config.swap_success_max);
    }
    w.stations.push_back(s);
  }
  w.fibers = build_fibers(config, w.stations);
  w.slots = std::max(1L, static_cast<long>(std::floor(config.horizon_s / config.slot_s + 1e-9)));
  w.windows = static_cast<int>(std::ceil(config.horizon_s / config.demand_period_s - 1e-9));

  const SatelliteConfig& sc = config.satellites;
  if (sc.enabled) {
    w.constellation = orbits::generate_constellation(sc.constellation);
    for (Satellite& s : w.constellation.satellites) {
      s.lens_capacity = sc.lens_capacity;
      s.lens_success = uniform_in(substream(seed, 0, kLensKey + s.id), sc.lens_success_min,
                                  sc.lens_success_max);
    }
    w.timeline = orbits::visibility_timeline(sc.constellation, w.constellation.satellites,
                                             w.stations, config.horizon_s, config.monitor_step_s,
                                             sc.min_elevation_deg);
  }

  const CommodityConfig& cc = config.commodities;
  std::vector<StationPair> pairs = cc.pairs;
  for (StationPair& p : pairs) p = StationPair::make(p.a, p.b);
  if (pairs.empty()) pairs = pick_pairs(w.stations.size(), cc.count, cc.selection_seed.value_or(seed));
  const double slots_per_window = config.demand_period_s / config.slot_s;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Commodity c;
    c.id = i;
    c.source = pairs[i].a;
    c.dest = pairs[i].b;
    w.commodities.push_back(c);
  }
  for (int win = 0; win < w.windows; ++win) {
    std::vector<double> pops = cc.populations;
    if (pops.empty()) {
      for (std::size_t s = 0; s < w.stations.size(); ++s) {
        pops.push_back(uniform_in(substream(seed, static_cast<std::uint64_t>(win), kPopKey + s),
                                  cc.population_min, cc.population_max));
      }
    }
    const DemandMatrix d = gravity_demands(pops, pairs, cc.total_demand);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      w.commodities[i].demand_series[win] = cc.demand_per_window ? d.z[i] / slots_per_window : d.z[i];
    }
    w.populations.push_back(std::move(pops));
  }
  return w;
}

lpp::LppInstance build_lpp_instance(const ScenarioConfig& config, const World& world,
                                    double start_s, double end_s) {
  lpp::LppInstance inst;
  inst.satellites = world.constellation.satellites;
  inst.isls = world.constellation.isls;
  inst.alpha = config.satellites.alpha;
  const auto epochs = orbits::commodity_epochs(world.timeline, world.commodities, start_s, end_s);
  for (const orbits::CommodityEpochs& ce : epochs) {
    for (std::size_t m = 0; m < ce.epochs.size(); ++m) {
      const orbits::Epoch& e = ce.epochs[m];
      lpp::Item it;
      it.commodity = ce.commodity;
      it.epoch = static_cast<int>(m);
      it.start_s = e.start_s;
      it.end_s = e.end_s;
      it.weight = (e.end_s - e.start_s) / config.slot_s;
      it.sources = e.source_sats;
      it.dests = e.dest_sats;
      if (it.weight > 0.0) inst.items.push_back(std::move(it));
    }
  }
  return inst;
}

std::vector<PeriodRelaxation> relax_periods(const ScenarioConfig& config, const World& world) {
  std::vector<PeriodRelaxation> out;
  if (!config.satellites.enabled) return out;
  for (double t = 0.0; t < config.horizon_s - 1e-9; t += config.planning_period_s) {
    PeriodRelaxation p;
    p.start_s = t;
    p.end_s = std::min(config.horizon_s, t + config.planning_period_s);
    try {
      p.instance = build_lpp_instance(config, world, p.start_s, p.end_s);
      p.flows = config.lpp_solver == LppSolver::kArcs
                    ? lpp::solve_relaxation_arc(p.instance)
                    : lpp::solve_relaxation_paths(p.instance, {}, &p.stats);
      p.candidates = lpp::decompose_flows(p.flows, p.instance);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "scenario '" << config.name << "', seed " << world.seed << ", planning period at "
          << p.start_s << " s: " << e.what();
      throw std::runtime_error(msg.str());
    }
    out.push_back(std::move(p));
  }
  return out;
}

RunResult run_once(const ScenarioConfig& config, const World& world, Algorithm algorithm) {
  if (algorithm == Algorithm::kGEdt) return run_once(config, world, algorithm, {});
  return run_once(config, world, algorithm, relax_periods(config, world));
}

RunResult run_once(const ScenarioConfig& config, const World& world, Algorithm algorithm,
                   const std::vector<PeriodRelaxation>& periods) {
  RunResult r;
  r.algorithm = algorithm;
  r.seed = world.seed;
  const SatelliteConfig& sc = config.satellites;

  if (algorithm != Algorithm::kGEdt) {
    for (std::size_t pi = 0; pi < periods.size(); ++pi) {
      const PeriodRelaxation& p = periods[pi];
      PlanningRecord rec;
      rec.start_s = p.start_s;
      rec.end_s = p.end_s;
      rec.items = p.instance.items.size();
      rec.skipped_items = p.flows.skipped_items.size();
      rec.candidates = p.candidates.size();
      rec.solver = p.stats;
      rec.solution = algorithm == Algorithm::kQuesatD
                         ? lpp::round_deterministic(p.candidates, p.instance, config.delta,
                                                    p.flows.objective)
                         : lpp::round_randomized(p.candidates, p.instance,
                                                 mix64(world.seed ^ kRoundKey) + pi,
                                                 p.flows.objective);
      for (const lpp::CandidateLightpath& c : rec.solution.selected) {
        const lpp::Item& item = p.instance.items[c.item];
        const Commodity& com = world.commodities[c.commodity];
        ProvisionedPath pp;
        pp.candidate = c;
        pp.start_s = item.start_s;
        pp.end_s = item.end_s;
        Lightpath& lp = pp.lightpath;
        lp.source_station = com.source;
        lp.dest_station = com.dest;
        lp.uplink = Gsl{com.source, c.sequence.front(), sc.uplink_survival};
        lp.downlink = Gsl{com.dest, c.sequence.back(), sc.downlink_survival};
        lp.satellites = c.sequence;
        lp.capacity = sc.alpha;
        lp.success = lightpath_success(lp.uplink, world.constellation.satellites, lp.satellites,
                                       lp.downlink);
        r.lightpaths.push_back(std::move(pp));
      }
      r.planning.push_back(std::move(rec));
    }
  }

  // Slots at which the augmented graph or the demand window changes.
  std::set<long> changes{0};
  for (int w = 1; w < world.windows; ++w) changes.insert(slot_at(w * config.demand_period_s, config.slot_s));
  for (const ProvisionedPath& p : r.lightpaths) {
    changes.insert(slot_at(p.start_s, config.slot_s));
    changes.insert(slot_at(p.end_s, config.slot_s));
  }
  std::vector<long> bounds;
  for (long s : changes) {
    if (s >= 0 && s < world.slots) bounds.push_back(s);
  }
  bounds.push_back(world.slots);

  protosim::SimState state(world.seed, protosim::SimOptions{config.max_age_slots});
  std::map<std::pair<int, std::vector<std::size_t>>, edt::EdtPlan> cache;
  std::pair<int, std::vector<std::size_t>> current{-1, {}};
  const std::size_t ncom = world.commodities.size();
  r.delivered.assign(ncom, std::vector<double>(static_cast<std::size_t>(world.slots), 0.0));
  std::vector<std::vector<protosim::SlotTrace>> by_window(static_cast<std::size_t>(world.windows));
  std::vector<protosim::SlotTrace> kept;
  double planned = 0.0;

  for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
    const long first = bounds[b];
    const long last = bounds[b + 1];
    const double t = static_cast<double>(first) * config.slot_s;
    const int window = std::min(world.windows - 1, static_cast<int>(std::floor(t / config.demand_period_s + 1e-9)));
    std::vector<std::size_t> active;
    NetworkSnapshot snap;
    snap.stations = world.stations;
    snap.fibers = world.fibers;
    snap.time_s = t;
    std::vector<Lightpath> provisioned;
    for (std::size_t i = 0; i < r.lightpaths.size(); ++i) {
      const ProvisionedPath& p = r.lightpaths[i];
      if (slot_at(p.start_s, config.slot_s) <= first && first < slot_at(p.end_s, config.slot_s)) {
        active.push_back(i);
        snap.gsls.push_back(p.lightpath.uplink);
        snap.gsls.push_back(p.lightpath.downlink);
        provisioned.push_back(p.lightpath);
      }
    }
    const AugmentedGraph graph = build_augmented_graph(snap, provisioned);
    std::pair<int, std::vector<std::size_t>> key{window, active};
    auto it = cache.find(key);
    if (it == cache.end()) {
      try {
        it = cache.emplace(key, edt::solve_edt(graph, world.commodities,
                                               edt_options(config, world, window))).first;
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "scenario '" << config.name << "', seed " << world.seed << ", "
            << to_string(algorithm) << ", slot " << first << ": " << e.what();
        throw std::runtime_error(msg.str());
      }
      ++r.edt_solves;
    }
    if (key != current) {
      state.set_plan(graph, it->second, world.commodities);
      current = key;
      ++r.plan_changes;
    }
    planned += it->second.total_rate() * static_cast<double>(last - first);
    for (long s = first; s < last; ++s) {
      protosim::SlotTrace tr = state.run_slot();
      for (std::size_t i = 0; i < ncom; ++i) {
        r.delivered[i][static_cast<std::size_t>(s)] = static_cast<double>(tr.delivered[i]);
      }
      if (s < config.warmup_slots) continue;
      tr.generated.clear();
      tr.consumed.clear();
      by_window[static_cast<std::size_t>(window)].push_back(tr);
    }
  }

  r.planned_total_rate = planned / static_cast<double>(world.slots);
  double sat_sum = 0.0;
  int sat_windows = 0;
  for (int w = 0; w < world.windows; ++w) {
    const auto& traces = by_window[static_cast<std::size_t>(w)];
    if (traces.empty()) {
      r.window_throughput.push_back(0.0);
      r.window_satisfaction.push_back(0.0);
      continue;
    }
    std::vector<double> demand(ncom);
    for (std::size_t i = 0; i < ncom; ++i) demand[i] = world.commodities[i].demand_at(w);
    r.window_throughput.push_back(protosim::average_throughput(traces, ncom));
    r.window_satisfaction.push_back(protosim::satisfaction_ratio(traces, demand));
    sat_sum += r.window_satisfaction.back();
    ++sat_windows;
    kept.insert(kept.end(), traces.begin(), traces.end());
  }
  if (kept.empty()) throw std::invalid_argument("warm-up covers the whole horizon");
  r.average_throughput = protosim::average_throughput(kept, ncom);
  r.total_rate = r.average_throughput * static_cast<double>(ncom);
  r.satisfaction_ratio = sat_sum / sat_windows;
  return r;
}

const AlgorithmSummary& ExperimentReport::summary(Algorithm algorithm) const {
  for (const AlgorithmSummary& s : summaries) {
    if (s.algorithm == algorithm) return s;
  }
  throw std::out_of_range(std::string("no results for ") + to_string(algorithm));
}

ExperimentReport run_experiment(const ScenarioConfig& config) {
  if (auto bad = check_config(config); !bad.empty()) {
    throw std::invalid_argument("scenario '" + config.name + "': " + bad.front());
  }
  ExperimentReport rep;
  rep.name = config.name;
  for (int i = 0; i < config.seeds; ++i) rep.seeds.push_back(config.base_seed + static_cast<std::uint64_t>(i));

  auto per_seed = [&config](std::uint64_t seed) {
    const World world = build_world(config, seed);
    const bool needs_lpp = std::any_of(config.algorithms.begin(), config.algorithms.end(),
                                       [](Algorithm a) { return a != Algorithm::kGEdt; });
    const std::vector<PeriodRelaxation> periods =
        needs_lpp ? relax_periods(config, world) : std::vector<PeriodRelaxation>{};
    std::vector<RunResult> runs;
    for (Algorithm a : config.algorithms) runs.push_back(run_once(config, world, a, periods));
    return runs;
  };
  std::vector<std::future<std::vector<RunResult>>> jobs;
  for (std::uint64_t seed : rep.seeds) jobs.push_back(std::async(std::launch::async, per_seed, seed));
  for (auto& j : jobs) {
    for (RunResult& r : j.get()) rep.runs.push_back(std::move(r));
  }

  for (Algorithm a : config.algorithms) {
    AlgorithmSummary s;
    s.algorithm = a;
    std::vector<double> thr, sat;
    for (const RunResult& r : rep.runs) {
      if (r.algorithm != a) continue;
      thr.push_back(r.average_throughput);
      sat.push_back(r.satisfaction_ratio);
      if (s.window_throughput.empty()) {
        s.window_throughput.assign(r.window_throughput.size(), 0.0);
        s.window_satisfaction.assign(r.window_satisfaction.size(), 0.0);
      }
      for (std::size_t w = 0; w < r.window_throughput.size(); ++w) {
        s.window_throughput[w] += r.window_throughput[w] / config.seeds;
        s.window_satisfaction[w] += r.window_satisfaction[w] / config.seeds;
      }
    }
    s.throughput = metrics::aggregate(thr);
    s.satisfaction = metrics::aggregate(sat);
    rep.summaries.push_back(std::move(s));
  }
  return rep;
}

void apply_parameter(ScenarioConfig& config, const std::string& parameter, double value) {
  if (parameter == "distance_factor") {
    config.fibers.distance_factor = value;
  } else if (parameter == "commodities") {
    config.commodities.count = static_cast<int>(std::lround(value));
    config.commodities.pairs.clear();
  } else if (parameter == "delta") {
    config.delta = value;
  } else if (parameter == "total_demand") {
    config.commodities.total_demand = value;
  } else {
    throw std::invalid_argument("unknown sweep parameter '" + parameter + "'");
  }
}

std::vector<SweepPoint> run_sweep(const ScenarioConfig& config, const std::string& parameter,
                                  const std::vector<double>& values) {
  std::vector<SweepPoint> out;
  for (double v : values) {
    ScenarioConfig c = config;
    apply_parameter(c, parameter, v);
    out.push_back({v, run_experiment(c)});
  }
  return out;
}

}  // namespace qsatnet::scenario
