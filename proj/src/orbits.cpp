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

#include "qsatnet/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qsatnet/simd.hpp"

namespace qsatnet::orbits {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double radius_km(const ConstellationSpec& spec) { return kEarthRadiusKm + spec.altitude_km; }

Vec3 rotate_z(const Vec3& v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

}  // namespace

void validate(const ConstellationSpec& spec) {
  if (spec.num_planes < 1 || spec.sats_per_plane < 1) {
    throw std::invalid_argument("constellation needs at least one plane and one satellite");
  }
  if (!(spec.inclination_deg >= 0.0 && spec.inclination_deg <= 180.0)) {
    throw std::invalid_argument("inclination must lie in [0, 180] degrees");
  }
  if (!(spec.altitude_km > 0.0)) throw std::invalid_argument("altitude must be positive");
  if (!std::isfinite(spec.phasing_offset)) throw std::invalid_argument("phasing offset must be finite");
}

Constellation generate_constellation(const ConstellationSpec& spec) {
  validate(spec);
  const int planes = spec.num_planes;
  const int per = spec.sats_per_plane;
  Constellation c;
  for (int p = 0; p < planes; ++p) {
    for (int s = 0; s < per; ++s) {
      Satellite sat;
      sat.id = static_cast<SatelliteId>(p * per + s);
      sat.plane_index = p;
      sat.slot_index = s;
      c.satellites.push_back(sat);
    }
  }
  std::set<Isl> links;
  auto id = [per](int p, int s) { return static_cast<SatelliteId>(p * per + s); };
  for (int p = 0; p < planes; ++p) {
    for (int s = 0; s < per; ++s) {
      const SatelliteId self = id(p, s);
      const SatelliteId neighbours[] = {id(p, (s + 1) % per), id(p, (s + per - 1) % per),
                                        id((p + 1) % planes, s), id((p + planes - 1) % planes, s)};
      for (SatelliteId n : neighbours) {
        if (n != self) links.insert(Isl::make(self, n));
      }
    }
  }
  c.isls.assign(links.begin(), links.end());
  return c;
}

double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

double orbital_period_s(const ConstellationSpec& spec) {
  const double r = radius_km(spec);
  return 2.0 * std::numbers::pi * std::sqrt(r * r * r / kEarthMu);
}

Vec3 position_inertial(const ConstellationSpec& spec, const Satellite& sat, double time_s) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double r = radius_km(spec);
  const double n = two_pi / orbital_period_s(spec);
  const double raan = two_pi * sat.plane_index / spec.num_planes;
  const double spacing = two_pi / spec.sats_per_plane;
  const double u = spacing * (sat.slot_index + spec.phasing_offset * sat.plane_index) + n * time_s;
  const double inc = spec.inclination_deg * kDeg;
  // Point in the orbital plane, tilted by inclination, then turned by RAAN.
  const Vec3 in_plane{r * std::cos(u), r * std::sin(u) * std::cos(inc), r * std::sin(u) * std::sin(inc)};
  return rotate_z(in_plane, raan);
}

Vec3 position_fixed(const ConstellationSpec& spec, const Satellite& sat, double time_s) {
  return rotate_z(position_inertial(spec, sat, time_s), -kEarthRotationRate * time_s);
}

Vec3 station_position(const GroundStation& station) {
  const double lat = station.latitude_deg * kDeg;
  const double lon = station.longitude_deg * kDeg;
  return {kEarthRadiusKm * std::cos(lat) * std::cos(lon),
          kEarthRadiusKm * std::cos(lat) * std::sin(lon), kEarthRadiusKm * std::sin(lat)};
}

double elevation_deg(const GroundStation& station, const Vec3& target) {
  const Vec3 p = station_position(station);
  const Vec3 d{target.x - p.x, target.y - p.y, target.z - p.z};
  const double s = (d.x * p.x + d.y * p.y + d.z * p.z) / (norm(d) * kEarthRadiusKm);
  return std::asin(std::clamp(s, -1.0, 1.0)) / kDeg;
}

VisibilityTimeline::VisibilityTimeline(std::size_t stations, std::size_t satellites,
                                       double horizon_s, double step_s)
    : stations_(stations),
      satellites_(satellites),
      horizon_s_(horizon_s),
      step_s_(step_s),
      intervals_(stations * satellites) {}

const std::vector<Interval>& VisibilityTimeline::intervals(StationId station, SatelliteId sat) const {
  return intervals_.at(station * satellites_ + sat);
}

std::vector<Interval>& VisibilityTimeline::intervals(StationId station, SatelliteId sat) {
  return intervals_.at(station * satellites_ + sat);
}

bool VisibilityTimeline::visible(StationId station, SatelliteId sat, double time_s) const {
  for (const Interval& iv : intervals(station, sat)) {
    if (time_s >= iv.rise_s && time_s < iv.set_s) return true;
  }
  return false;
}

std::vector<SatelliteId> VisibilityTimeline::visible_from(StationId station, double time_s) const {
  std::vector<SatelliteId> out;
  for (SatelliteId s = 0; s < satellites_; ++s) {
    if (visible(station, s, time_s)) out.push_back(s);
  }
  return out;
}

std::vector<double> VisibilityTimeline::events(StationId station) const {
  std::vector<double> out;
  for (SatelliteId s = 0; s < satellites_; ++s) {
    for (const Interval& iv : intervals(station, s)) {
      out.push_back(iv.rise_s);
      out.push_back(iv.set_s);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VisibilityTimeline visibility_timeline(const ConstellationSpec& spec,
                                       const std::vector<Satellite>& satellites,
                                       const std::vector<GroundStation>& stations,
                                       double horizon_s, double step_s,
                                       double min_elevation_deg) {
  if (!(step_s > 0.0)) throw std::invalid_argument("visibility step must be positive");
  if (!(horizon_s >= step_s)) throw std::invalid_argument("horizon must cover at least one step");
  validate(spec);
  VisibilityTimeline tl(stations.size(), satellites.size(), horizon_s, step_s);
  const std::size_t n = satellites.size();
  const double threshold =
      min_elevation_deg <= -90.0 ? -2.0 : std::sin(std::min(min_elevation_deg, 91.0) * kDeg);
  const bool impossible = min_elevation_deg > 90.0;

  std::vector<simd::Observer> observers;
  for (const GroundStation& g : stations) {
    const Vec3 p = station_position(g);
    observers.push_back({p.x, p.y, p.z, p.x / kEarthRadiusKm, p.y / kEarthRadiusKm,
                         p.z / kEarthRadiusKm});
  }
  // Open interval start per (station, satellite), or negative when not visible.
  std::vector<double> open(stations.size() * n, -1.0);
  std::vector<double> xs(n), ys(n), zs(n), sines(n);
  const simd::Kernels& k = simd::kernels();
  const auto samples = static_cast<long>(std::ceil(horizon_s / step_s - 1e-9));
  for (long i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) * step_s;
    for (std::size_t s = 0; s < n; ++s) {
      const Vec3 p = position_fixed(spec, satellites[s], t);
      xs[s] = p.x;
      ys[s] = p.y;
      zs[s] = p.z;
    }
    for (std::size_t g = 0; g < stations.size(); ++g) {
      k.elevation_sines(xs.data(), ys.data(), zs.data(), n, observers[g], sines.data());
      for (std::size_t s = 0; s < n; ++s) {
        const bool vis = !impossible && sines[s] >= threshold;
        double& start = open[g * n + s];
        if (vis && start < 0.0) start = t;
        if (!vis && start >= 0.0) {
          tl.intervals(g, s).push_back({start, t});
          start = -1.0;
        }
      }
    }
  }
  for (std::size_t g = 0; g < stations.size(); ++g) {
    for (std::size_t s = 0; s < n; ++s) {
      if (open[g * n + s] >= 0.0) tl.intervals(g, s).push_back({open[g * n + s], horizon_s});
    }
  }
  return tl;
}

void write_timeline_csv(const VisibilityTimeline& timeline, std::ostream& out) {
  out << "station,satellite,rise_s,set_s\n";
  for (StationId g = 0; g < timeline.station_count(); ++g) {
    for (SatelliteId s = 0; s < timeline.satellite_count(); ++s) {
      for (const Interval& iv : timeline.intervals(g, s)) {
        out << g << ',' << s << ',' << iv.rise_s << ',' << iv.set_s << '\n';
      }
    }
  }
}

VisibilityTimeline read_timeline_csv(std::istream& in, std::size_t stations,
                                     std::size_t satellites, double horizon_s, double step_s) {
  VisibilityTimeline tl(stations, satellites, horizon_s, step_s);
  std::string line;
  std::getline(in, line);
  if (line.rfind("station,satellite,rise_s,set_s", 0) != 0) {
    throw std::runtime_error("timeline csv: unexpected header '" + line + "'");
  }
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::size_t g = 0, s = 0;
    double rise = 0, set = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(ls >> g >> c1 >> s >> c2 >> rise >> c3 >> set) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw std::runtime_error("timeline csv: malformed row " + std::to_string(row));
    }
    if (g >= stations || s >= satellites || !(rise < set)) {
      throw std::runtime_error("timeline csv: invalid row " + std::to_string(row));
    }
    tl.intervals(g, s).push_back({rise, set});
  }
  for (StationId g = 0; g < stations; ++g) {
    for (SatelliteId s = 0; s < satellites; ++s) {
      auto& v = tl.intervals(g, s);
      std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
        return a.rise_s < b.rise_s;
      });
    }
  }
  return tl;
}

int CommodityEpochs::index_at(double time_s) const {
  return static_cast<int>(std::upper_bound(change_times.begin(), change_times.end(), time_s) -
                          change_times.begin());
}

std::vector<CommodityEpochs> commodity_epochs(const VisibilityTimeline& timeline,
                                              const std::vector<Commodity>& commodities,
                                              double start_s, double end_s) {
  std::vector<CommodityEpochs> out;
  for (const Commodity& c : commodities) {
    CommodityEpochs ce;
    ce.commodity = c.id;
    std::vector<double> ev = timeline.events(c.source);
    const std::vector<double> dv = timeline.events(c.dest);
    ev.insert(ev.end(), dv.begin(), dv.end());
    std::sort(ev.begin(), ev.end());
    ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
    for (double t : ev) {
      if (t > start_s && t < end_s) ce.change_times.push_back(t);
    }
    bool src_seen = false;
    bool dst_seen = false;
    double begin = start_s;
    for (std::size_t i = 0; i <= ce.change_times.size(); ++i) {
      const double end = i < ce.change_times.size() ? ce.change_times[i] : end_s;
      Epoch e{begin, end, timeline.visible_from(c.source, begin),
              timeline.visible_from(c.dest, begin)};
      src_seen = src_seen || !e.source_sats.empty();
      dst_seen = dst_seen || !e.dest_sats.empty();
      ce.epochs.push_back(std::move(e));
      begin = end;
    }
    ce.never_visible = !src_seen || !dst_seen;
    out.push_back(std::move(ce));
  }
  return out;
}

}  // namespace qsatnet::orbits
