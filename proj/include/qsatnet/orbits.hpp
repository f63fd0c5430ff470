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

// Circular-orbit constellation geometry, ground visibility sampling and the
// per-commodity topology-change epochs derived from it.
//
// Frames: "inertial" is an Earth-centred frame that does not rotate; "fixed"
// is Earth-fixed, obtained by rotating the inertial frame about +z by the
// sidereal angle at time t (zero at t = 0). Units are km and seconds.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "qsatnet/netmodel.hpp"

namespace qsatnet::orbits {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kEarthMu = 398600.4;            // km^3 / s^2
inline constexpr double kEarthRotationRate = 7.2921159e-5;  // rad / s

struct ConstellationSpec {
  int num_planes = 10;
  int sats_per_plane = 15;
  double inclination_deg = 96.9;
  double altitude_km = 780.0;
  double phasing_offset = 0.0;  // fraction of in-plane spacing per plane
};

// Throws std::invalid_argument on out-of-range fields.
void validate(const ConstellationSpec& spec);

struct Constellation {
  std::vector<Satellite> satellites;  // id = plane * S + slot
  std::vector<Isl> isls;              // sorted, deduplicated
};

// +Grid constellation: in-plane ring neighbours and same-slot neighbours in
// the adjacent planes. Lens parameters are left at their defaults.
Constellation generate_constellation(const ConstellationSpec& spec);

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

double norm(const Vec3& v);

double orbital_period_s(const ConstellationSpec& spec);

Vec3 position_inertial(const ConstellationSpec& spec, const Satellite& sat, double time_s);
Vec3 position_fixed(const ConstellationSpec& spec, const Satellite& sat, double time_s);

Vec3 station_position(const GroundStation& station);

// Elevation of `target` above the local horizon of `station`, degrees.
double elevation_deg(const GroundStation& station, const Vec3& target_fixed);

struct Interval {
  double rise_s = 0.0;
  double set_s = 0.0;  // exclusive
};

class VisibilityTimeline {
 public:
  VisibilityTimeline() = default;
  VisibilityTimeline(std::size_t stations, std::size_t satellites, double horizon_s,
                     double step_s);

  std::size_t station_count() const { return stations_; }
  std::size_t satellite_count() const { return satellites_; }
  double horizon_s() const { return horizon_s_; }
  double step_s() const { return step_s_; }

  const std::vector<Interval>& intervals(StationId station, SatelliteId sat) const;
  std::vector<Interval>& intervals(StationId station, SatelliteId sat);
  bool visible(StationId station, SatelliteId sat, double time_s) const;
  // Sorted satellite ids visible at `time_s`.
  std::vector<SatelliteId> visible_from(StationId station, double time_s) const;
  // Sorted rise and set times of every interval touching the station.
  std::vector<double> events(StationId station) const;

 private:
  std::size_t stations_ = 0;
  std::size_t satellites_ = 0;
  double horizon_s_ = 0.0;
  double step_s_ = 0.0;
  std::vector<std::vector<Interval>> intervals_;
};

// Samples elevation at t = 0, step, 2 step, ... < horizon and coalesces the
// visible samples into [rise, set) intervals.
VisibilityTimeline visibility_timeline(const ConstellationSpec& spec,
                                       const std::vector<Satellite>& satellites,
                                       const std::vector<GroundStation>& stations,
                                       double horizon_s, double step_s,
                                       double min_elevation_deg);

// CSV with header station,satellite,rise_s,set_s.
void write_timeline_csv(const VisibilityTimeline& timeline, std::ostream& out);
VisibilityTimeline read_timeline_csv(std::istream& in, std::size_t stations,
                                     std::size_t satellites, double horizon_s, double step_s);

struct Epoch {
  double start_s = 0.0;
  double end_s = 0.0;
  std::vector<SatelliteId> source_sats;  // visible from s_i
  std::vector<SatelliteId> dest_sats;    // visible from d_i
};

struct CommodityEpochs {
  std::size_t commodity = 0;
  std::vector<double> change_times;  // strictly inside (start, end)
  std::vector<Epoch> epochs;
  bool never_visible = false;  // an endpoint sees no satellite in the window

  // m_i^t: number of change times <= t.
  int index_at(double time_s) const;
};

// Epochs of each commodity over [start_s, end_s); the window start counts as
// epoch zero regardless of events.
std::vector<CommodityEpochs> commodity_epochs(const VisibilityTimeline& timeline,
                                              const std::vector<Commodity>& commodities,
                                              double start_s, double end_s);

inline std::vector<CommodityEpochs> commodity_epochs(const VisibilityTimeline& timeline,
                                                     const std::vector<Commodity>& commodities) {
  return commodity_epochs(timeline, commodities, 0.0, timeline.horizon_s());
}

}  // namespace qsatnet::orbits
