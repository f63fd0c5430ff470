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

// Domain types for the hybrid ground/satellite network: stations, fibers,
// satellites, inter-satellite links (ISLs), ground-satellite links (GSLs),
// lightpaths, commodities and the augmented ground multigraph.
//
// Stations and satellites are referred to by their index in the owning
// vector. Unordered pairs are canonicalized so that (m, n) and (n, m) compare
// equal and hash identically.

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsatnet {

using StationId = std::size_t;
using SatelliteId = std::size_t;

struct StationPair {
  StationId a = 0;  // a < b after construction via make
  StationId b = 0;

  static StationPair make(StationId m, StationId n) {
    return m < n ? StationPair{m, n} : StationPair{n, m};
  }
  bool contains(StationId v) const { return a == v || b == v; }
  StationId other(StationId v) const { return v == a ? b : a; }
  auto operator<=>(const StationPair&) const = default;
};

struct GroundStation {
  std::string id;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double swap_success = 1.0;  // q^g_v
};

struct FiberLink {
  StationPair endpoints;
  int capacity = 1;           // channels per slot
  double gen_success = 1.0;   // q^g_e
  double length_km = 0.0;
};

struct Satellite {
  SatelliteId id = 0;
  int plane_index = 0;
  int slot_index = 0;
  int lens_capacity = 1;      // c^s_v
  double lens_success = 1.0;  // q^s_v
};

struct Isl {
  SatelliteId a = 0;  // a < b
  SatelliteId b = 0;

  static Isl make(SatelliteId u, SatelliteId v) { return u < v ? Isl{u, v} : Isl{v, u}; }
  auto operator<=>(const Isl&) const = default;
};

struct Gsl {
  StationId station = 0;
  SatelliteId satellite = 0;
  double survival = 1.0;  // q^gs_e
};

struct NetworkSnapshot {
  std::vector<GroundStation> stations;
  std::vector<FiberLink> fibers;
  std::vector<Satellite> satellites;
  std::vector<Isl> isls;
  std::vector<Gsl> gsls;  // E^gs(t)
  double time_s = 0.0;

  bool has_gsl(StationId station, SatelliteId satellite) const;
};

// GSL -> ISL* -> GSL chain between two stations.
struct Lightpath {
  StationId source_station = 0;
  StationId dest_station = 0;
  Gsl uplink;
  std::vector<SatelliteId> satellites;  // v_1 .. v_k, consecutive ones share an ISL
  Gsl downlink;
  double capacity = 0.0;  // alpha
  double success = 0.0;   // q(p)

  StationPair pair() const { return StationPair::make(source_station, dest_station); }
};

// Computes q(p) for the given satellite sequence and GSLs.
double lightpath_success(const Gsl& uplink, const std::vector<Satellite>& satellites,
                         const std::vector<SatelliteId>& sequence, const Gsl& downlink);

struct Commodity {
  std::size_t id = 0;
  StationId source = 0;
  StationId dest = 0;
  std::map<int, double> demand_series;  // demand window index -> z_i

  StationPair pair() const { return StationPair::make(source, dest); }
  double demand_at(int window) const;
};

enum class EdgeKind { kFiber, kLightpath };

struct AugmentedEdge {
  StationPair pair;
  EdgeKind kind = EdgeKind::kFiber;
  double capacity = 0.0;  // c^g_e for fibers, alpha for lightpaths
  double success = 0.0;   // q^g_e or q(p)
  std::size_t source_index = 0;  // index into fibers or provisioned lightpaths
};

// Ground stations with fibers and provisioned lightpaths as parallel edges.
class AugmentedGraph {
 public:
  AugmentedGraph() = default;
  AugmentedGraph(std::vector<GroundStation> stations, std::vector<AugmentedEdge> edges);

  const std::vector<GroundStation>& stations() const { return stations_; }
  const std::vector<AugmentedEdge>& edges() const { return edges_; }
  std::size_t station_count() const { return stations_.size(); }

  // Edge indices between the pair, in insertion order.
  std::vector<std::size_t> edges_between(StationPair pair) const;
  // Pairs with at least one edge, sorted.
  std::vector<StationPair> connected_pairs() const;
  // sum over parallel edges of capacity * success.
  double expected_rate(StationPair pair) const;
  // sum over parallel edges of capacity.
  double total_capacity(StationPair pair) const;

 private:
  std::vector<GroundStation> stations_;
  std::vector<AugmentedEdge> edges_;
  std::map<StationPair, std::vector<std::size_t>> by_pair_;
};

// One edge per fiber plus one virtual edge per lightpath. Throws
// std::invalid_argument when a lightpath's uplink or downlink is not active
// in the snapshot.
AugmentedGraph build_augmented_graph(const NetworkSnapshot& snapshot,
                                     const std::vector<Lightpath>& provisioned);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_scenario(const std::vector<GroundStation>& stations,
                                   const std::vector<FiberLink>& fibers,
                                   const std::vector<Satellite>& satellites,
                                   const std::vector<Commodity>& commodities);

}  // namespace qsatnet
