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

#include "qsatnet/netmodel.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace qsatnet {

bool NetworkSnapshot::has_gsl(StationId station, SatelliteId satellite) const {
  for (const Gsl& g : gsls) {
    if (g.station == station && g.satellite == satellite) return true;
  }
  return false;
}

double lightpath_success(const Gsl& uplink, const std::vector<Satellite>& satellites,
                         const std::vector<SatelliteId>& sequence, const Gsl& downlink) {
  double q = uplink.survival * downlink.survival;
  for (SatelliteId s : sequence) q *= satellites.at(s).lens_success;
  return q;
}

double Commodity::demand_at(int window) const {
  if (demand_series.empty()) return 0.0;
  auto it = demand_series.upper_bound(window);
  if (it == demand_series.begin()) return it->second;
  return std::prev(it)->second;
}

AugmentedGraph::AugmentedGraph(std::vector<GroundStation> stations,
                               std::vector<AugmentedEdge> edges)
    : stations_(std::move(stations)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const StationPair p = edges_[i].pair;
    if (p.a == p.b || p.b >= stations_.size()) {
      throw std::invalid_argument("AugmentedGraph: edge endpoints invalid");
    }
    by_pair_[p].push_back(i);
  }
}

std::vector<std::size_t> AugmentedGraph::edges_between(StationPair pair) const {
  auto it = by_pair_.find(StationPair::make(pair.a, pair.b));
  return it == by_pair_.end() ? std::vector<std::size_t>{} : it->second;
}

std::vector<StationPair> AugmentedGraph::connected_pairs() const {
  std::vector<StationPair> out;
  out.reserve(by_pair_.size());
  for (const auto& [p, _] : by_pair_) out.push_back(p);
  return out;
}

double AugmentedGraph::expected_rate(StationPair pair) const {
  double r = 0.0;
  for (std::size_t e : edges_between(pair)) r += edges_[e].capacity * edges_[e].success;
  return r;
}

double AugmentedGraph::total_capacity(StationPair pair) const {
  double c = 0.0;
  for (std::size_t e : edges_between(pair)) c += edges_[e].capacity;
  return c;
}

AugmentedGraph build_augmented_graph(const NetworkSnapshot& snapshot,
                                     const std::vector<Lightpath>& provisioned) {
  std::vector<AugmentedEdge> edges;
  edges.reserve(snapshot.fibers.size() + provisioned.size());
  for (std::size_t i = 0; i < snapshot.fibers.size(); ++i) {
    const FiberLink& f = snapshot.fibers[i];
    edges.push_back({StationPair::make(f.endpoints.a, f.endpoints.b), EdgeKind::kFiber,
                     static_cast<double>(f.capacity), f.gen_success, i});
  }
  for (std::size_t i = 0; i < provisioned.size(); ++i) {
    const Lightpath& p = provisioned[i];
    if (!snapshot.has_gsl(p.uplink.station, p.uplink.satellite)) {
      throw std::invalid_argument("build_augmented_graph: uplink GSL of lightpath " +
                                  std::to_string(i) + " is not active at t=" +
                                  std::to_string(snapshot.time_s));
    }
    if (!snapshot.has_gsl(p.downlink.station, p.downlink.satellite)) {
      throw std::invalid_argument("build_augmented_graph: downlink GSL of lightpath " +
                                  std::to_string(i) + " is not active at t=" +
                                  std::to_string(snapshot.time_s));
    }
    edges.push_back({p.pair(), EdgeKind::kLightpath, p.capacity, p.success, i});
  }
  return AugmentedGraph(snapshot.stations, std::move(edges));
}

namespace {

bool is_probability(double p) { return p > 0.0 && p <= 1.0; }

}  // namespace

ValidationReport validate_scenario(const std::vector<GroundStation>& stations,
                                   const std::vector<FiberLink>& fibers,
                                   const std::vector<Satellite>& satellites,
                                   const std::vector<Commodity>& commodities) {
  ValidationReport report;
  auto flag = [&report](std::string msg) { report.violations.push_back(std::move(msg)); };

  std::set<std::string> station_ids;
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const GroundStation& s = stations[i];
    const std::string tag = "station '" + s.id + "'";
    if (!station_ids.insert(s.id).second) flag(tag + ": duplicate id");
    if (!(s.latitude_deg >= -90.0 && s.latitude_deg <= 90.0)) flag(tag + ": latitude out of [-90,90]");
    if (!(s.longitude_deg >= -180.0 && s.longitude_deg <= 180.0)) {
      flag(tag + ": longitude out of [-180,180]");
    }
    if (!is_probability(s.swap_success)) flag(tag + ": swap_success out of (0,1]");
  }

  const auto station_name = [&](StationId v) {
    return v < stations.size() ? stations[v].id : "#" + std::to_string(v);
  };
  std::set<StationPair> fiber_pairs;
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    const FiberLink& f = fibers[i];
    const std::string tag = "fiber " + station_name(f.endpoints.a) + "-" + station_name(f.endpoints.b);
    if (f.endpoints.a >= stations.size() || f.endpoints.b >= stations.size()) {
      flag(tag + ": references unknown station");
      continue;
    }
    if (f.endpoints.a == f.endpoints.b) flag(tag + ": endpoints must be distinct");
    if (f.capacity < 1) flag(tag + ": capacity must be >= 1");
    if (!is_probability(f.gen_success)) flag(tag + ": gen_success out of (0,1]");
    if (!(f.length_km >= 0.0)) flag(tag + ": negative length");
    if (!fiber_pairs.insert(StationPair::make(f.endpoints.a, f.endpoints.b)).second) {
      flag(tag + ": duplicate fiber");
    }
  }

  std::set<SatelliteId> sat_ids;
  for (const Satellite& s : satellites) {
    const std::string tag = "satellite " + std::to_string(s.id);
    if (!sat_ids.insert(s.id).second) flag(tag + ": duplicate id");
    if (s.lens_capacity < 1) flag(tag + ": lens_capacity must be >= 1");
    if (!is_probability(s.lens_success)) flag(tag + ": lens_success out of (0,1]");
  }

  std::set<std::size_t> commodity_ids;
  std::set<StationPair> commodity_pairs;
  for (const Commodity& c : commodities) {
    const std::string tag = "commodity " + std::to_string(c.id);
    if (!commodity_ids.insert(c.id).second) flag(tag + ": duplicate id");
    if (c.source >= stations.size() || c.dest >= stations.size()) {
      flag(tag + ": references unknown station");
      continue;
    }
    if (c.source == c.dest) flag(tag + ": source equals destination");
    if (!commodity_pairs.insert(c.pair()).second) flag(tag + ": duplicate station pair");
    for (const auto& [window, z] : c.demand_series) {
      if (!(z >= 0.0)) {
        flag(tag + ": negative demand in window " + std::to_string(window));
      }
    }
  }
  return report;
}

}  // namespace qsatnet
