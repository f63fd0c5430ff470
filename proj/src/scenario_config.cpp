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

#include "qsatnet/scenario_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qsatnet::scenario {
namespace {

using nlohmann::json;

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!ok.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
  }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

void read_range(const json& j, const char* key, double& lo, double& hi, const std::string& where) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (v.is_number()) {
    lo = hi = v.get<double>();
  } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    lo = v[0].get<double>();
    hi = v[1].get<double>();
  } else {
    throw ConfigError(where + "." + key + ": expected a number or [min, max]");
  }
}

StationSpec parse_station(const json& j, const std::string& where) {
  only_keys(j, where, {"id", "latitude_deg", "longitude_deg", "swap_success", "name"});
  StationSpec s;
  if (!j.contains("id") || !j.contains("latitude_deg") || !j.contains("longitude_deg")) {
    throw ConfigError(where + ": id, latitude_deg and longitude_deg are required");
  }
  read(j, "id", s.station.id, where);
  read(j, "latitude_deg", s.station.latitude_deg, where);
  read(j, "longitude_deg", s.station.longitude_deg, where);
  if (j.contains("swap_success")) {
    read(j, "swap_success", s.station.swap_success, where);
    s.swap_success_given = true;
  }
  return s;
}

std::vector<StationSpec> parse_station_list(const json& j, const std::string& where) {
  const json& arr = j.is_object() && j.contains("stations") ? j.at("stations") : j;
  if (!arr.is_array()) throw ConfigError(where + ": expected a list of stations");
  std::vector<StationSpec> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(parse_station(arr[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

StationId station_ref(const json& v, const std::vector<StationSpec>& stations,
                      const std::string& where) {
  if (v.is_number_unsigned()) {
    const auto i = v.get<std::size_t>();
    if (i >= stations.size()) throw ConfigError(where + ": station index out of range");
    return i;
  }
  if (v.is_string()) {
    const auto id = v.get<std::string>();
    for (std::size_t i = 0; i < stations.size(); ++i) {
      if (stations[i].station.id == id) return i;
    }
    throw ConfigError(where + ": unknown station '" + id + "'");
  }
  throw ConfigError(where + ": expected a station id or index");
}

edt::Objective parse_objective(const std::string& s) {
  if (s == "max_total") return edt::Objective::kMaxTotal;
  if (s == "max_total_demand_capped") return edt::Objective::kMaxTotalDemandCapped;
  if (s == "max_min_fairness") return edt::Objective::kMaxMinFairness;
  throw ConfigError("simulation.objective: unknown objective '" + s + "'");
}

const char* objective_name(edt::Objective o) {
  switch (o) {
    case edt::Objective::kMaxTotal: return "max_total";
    case edt::Objective::kMaxTotalDemandCapped: return "max_total_demand_capped";
    case edt::Objective::kMaxMinFairness: return "max_min_fairness";
  }
  return "?";
}

}  // namespace

std::vector<StationSpec> load_stations(const std::filesystem::path& path) {
  return parse_station_list(read_json_file(path), path.string());
}

namespace {

ScenarioConfig parse_checked(const std::string& json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  only_keys(root, "config",
            {"name", "stations", "fibers", "constellation", "channel", "commodities", "simulation"});
  ScenarioConfig c;
  read(root, "name", c.name, "config");

  if (!root.contains("stations")) throw ConfigError("config: stations are required");
  const json& st = root.at("stations");
  if (st.is_object() && st.contains("file")) {
    only_keys(st, "stations", {"file"});
    std::filesystem::path file = st.at("file").get<std::string>();
    if (file.is_relative()) file = base_dir / file;
    c.stations = load_stations(file);
  } else {
    c.stations = parse_station_list(st, "stations");
  }

  if (root.contains("fibers")) {
    const json& f = root.at("fibers");
    only_keys(f, "fibers", {"complete", "capacity", "gamma_db_per_km", "distance_factor", "links"});
    read(f, "complete", c.fibers.complete, "fibers");
    read(f, "capacity", c.fibers.capacity, "fibers");
    read(f, "gamma_db_per_km", c.fibers.gamma_db_per_km, "fibers");
    read(f, "distance_factor", c.fibers.distance_factor, "fibers");
    if (f.contains("links")) {
      if (!f.at("links").is_array()) throw ConfigError("fibers.links: expected a list");
      for (std::size_t i = 0; i < f.at("links").size(); ++i) {
        const json& l = f.at("links")[i];
        const std::string where = "fibers.links[" + std::to_string(i) + "]";
        only_keys(l, where, {"a", "b", "length_km", "gen_success", "capacity"});
        if (!l.contains("a") || !l.contains("b")) throw ConfigError(where + ": a and b are required");
        FiberSpec s;
        s.a = station_ref(l.at("a"), c.stations, where + ".a");
        s.b = station_ref(l.at("b"), c.stations, where + ".b");
        if (l.contains("length_km")) s.length_km = l.at("length_km").get<double>();
        if (l.contains("gen_success")) s.gen_success = l.at("gen_success").get<double>();
        if (l.contains("capacity")) s.capacity = l.at("capacity").get<int>();
        c.fibers.links.push_back(s);
      }
      if (!f.contains("complete")) c.fibers.complete = false;
    }
  }

  if (root.contains("constellation")) {
    const json& k = root.at("constellation");
    const std::string w = "constellation";
    only_keys(k, w,
              {"enabled", "planes", "sats_per_plane", "inclination_deg", "altitude_km",
               "phasing_offset", "lens_capacity", "lens_success", "min_elevation_deg",
               "uplink_survival", "downlink_survival", "alpha"});
    SatelliteConfig& s = c.satellites;
    read(k, "enabled", s.enabled, w);
    read(k, "planes", s.constellation.num_planes, w);
    read(k, "sats_per_plane", s.constellation.sats_per_plane, w);
    read(k, "inclination_deg", s.constellation.inclination_deg, w);
    read(k, "altitude_km", s.constellation.altitude_km, w);
    read(k, "phasing_offset", s.constellation.phasing_offset, w);
    read(k, "lens_capacity", s.lens_capacity, w);
    read_range(k, "lens_success", s.lens_success_min, s.lens_success_max, w);
    read(k, "min_elevation_deg", s.min_elevation_deg, w);
    read(k, "uplink_survival", s.uplink_survival, w);
    read(k, "downlink_survival", s.downlink_survival, w);
    read(k, "alpha", s.alpha, w);
  } else {
    c.satellites.enabled = false;
  }

  if (root.contains("channel")) {
    const json& k = root.at("channel");
    only_keys(k, "channel", {"q_gen", "n_attempts", "swap_success"});
    read(k, "q_gen", c.generation.q_gen, "channel");
    read(k, "n_attempts", c.generation.n_attempts, "channel");
    read_range(k, "swap_success", c.swap_success_min, c.swap_success_max, "channel");
  }

  if (root.contains("commodities")) {
    const json& k = root.at("commodities");
    const std::string w = "commodities";
    only_keys(k, w,
              {"count", "selection_seed", "pairs", "total_demand", "population", "populations",
               "demand_basis"});
    CommodityConfig& cc = c.commodities;
    read(k, "count", cc.count, w);
    if (k.contains("selection_seed")) cc.selection_seed = k.at("selection_seed").get<std::uint64_t>();
    if (k.contains("pairs")) {
      const json& ps = k.at("pairs");
      if (!ps.is_array()) throw ConfigError(w + ".pairs: expected a list");
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string pw = w + ".pairs[" + std::to_string(i) + "]";
        if (!ps[i].is_array() || ps[i].size() != 2) throw ConfigError(pw + ": expected [a, b]");
        cc.pairs.push_back(StationPair::make(station_ref(ps[i][0], c.stations, pw),
                                             station_ref(ps[i][1], c.stations, pw)));
      }
      cc.count = static_cast<int>(cc.pairs.size());
    }
    read(k, "total_demand", cc.total_demand, w);
    read_range(k, "population", cc.population_min, cc.population_max, w);
    read(k, "populations", cc.populations, w);
    if (k.contains("demand_basis")) {
      const auto b = k.at("demand_basis").get<std::string>();
      if (b == "per_window") {
        cc.demand_per_window = true;
      } else if (b == "per_slot") {
        cc.demand_per_window = false;
      } else {
        throw ConfigError(w + ".demand_basis: expected per_window or per_slot");
      }
    }
  }

  if (root.contains("simulation")) {
    const json& k = root.at("simulation");
    const std::string w = "simulation";
    only_keys(k, w,
              {"slot_s", "horizon_s", "demand_period_s", "monitor_step_s", "planning_period_s",
               "algorithms", "delta", "repeaters", "objective", "lpp_solver", "max_age_slots",
               "warmup_slots", "seeds", "base_seed"});
    read(k, "slot_s", c.slot_s, w);
    read(k, "horizon_s", c.horizon_s, w);
    read(k, "demand_period_s", c.demand_period_s, w);
    read(k, "monitor_step_s", c.monitor_step_s, w);
    read(k, "planning_period_s", c.planning_period_s, w);
    if (k.contains("algorithms")) {
      std::vector<std::string> names;
      read(k, "algorithms", names, w);
      c.algorithms.clear();
      try {
        for (const auto& n : names) c.algorithms.push_back(parse_algorithm(n));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(w + ".algorithms: " + e.what());
      }
    }
    read(k, "delta", c.delta, w);
    if (k.contains("repeaters")) {
      const auto r = k.at("repeaters").get<std::string>();
      if (r == "commodities_only") {
        c.repeaters = RepeaterMode::kCommoditiesOnly;
      } else if (r == "all_stations") {
        c.repeaters = RepeaterMode::kAllStations;
      } else {
        throw ConfigError(w + ".repeaters: expected commodities_only or all_stations");
      }
    }
    if (k.contains("objective")) c.objective = parse_objective(k.at("objective").get<std::string>());
    if (k.contains("lpp_solver")) {
      const auto s = k.at("lpp_solver").get<std::string>();
      if (s == "columns") {
        c.lpp_solver = LppSolver::kColumns;
      } else if (s == "arcs") {
        c.lpp_solver = LppSolver::kArcs;
      } else {
        throw ConfigError(w + ".lpp_solver: expected columns or arcs");
      }
    }
    read(k, "max_age_slots", c.max_age_slots, w);
    read(k, "warmup_slots", c.warmup_slots, w);
    read(k, "seeds", c.seeds, w);
    read(k, "base_seed", c.base_seed, w);
  }
  return c;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  try {
    return parse_checked(json_text, base_dir);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("wrong value type: ") + e.what());
  }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string config_to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  json st = json::array();
  for (const StationSpec& s : c.stations) {
    json e{{"id", s.station.id},
           {"latitude_deg", s.station.latitude_deg},
           {"longitude_deg", s.station.longitude_deg}};
    if (s.swap_success_given) e["swap_success"] = s.station.swap_success;
    st.push_back(e);
  }
  j["stations"] = st;
  json fib{{"complete", c.fibers.complete},
           {"capacity", c.fibers.capacity},
           {"gamma_db_per_km", c.fibers.gamma_db_per_km},
           {"distance_factor", c.fibers.distance_factor}};
  if (!c.fibers.links.empty()) {
    json links = json::array();
    for (const FiberSpec& l : c.fibers.links) {
      json e{{"a", l.a}, {"b", l.b}};
      if (l.length_km) e["length_km"] = *l.length_km;
      if (l.gen_success) e["gen_success"] = *l.gen_success;
      if (l.capacity) e["capacity"] = *l.capacity;
      links.push_back(e);
    }
    fib["links"] = links;
  }
  j["fibers"] = fib;
  const SatelliteConfig& s = c.satellites;
  j["constellation"] = {{"enabled", s.enabled},
                        {"planes", s.constellation.num_planes},
                        {"sats_per_plane", s.constellation.sats_per_plane},
                        {"inclination_deg", s.constellation.inclination_deg},
                        {"altitude_km", s.constellation.altitude_km},
                        {"phasing_offset", s.constellation.phasing_offset},
                        {"lens_capacity", s.lens_capacity},
                        {"lens_success", {s.lens_success_min, s.lens_success_max}},
                        {"min_elevation_deg", s.min_elevation_deg},
                        {"uplink_survival", s.uplink_survival},
                        {"downlink_survival", s.downlink_survival},
                        {"alpha", s.alpha}};
  j["channel"] = {{"q_gen", c.generation.q_gen},
                  {"n_attempts", c.generation.n_attempts},
                  {"swap_success", {c.swap_success_min, c.swap_success_max}}};
  const CommodityConfig& cc = c.commodities;
  json com{{"count", cc.count},
           {"total_demand", cc.total_demand},
           {"population", {cc.population_min, cc.population_max}},
           {"demand_basis", cc.demand_per_window ? "per_window" : "per_slot"}};
  if (cc.selection_seed) com["selection_seed"] = *cc.selection_seed;
  if (!cc.populations.empty()) com["populations"] = cc.populations;
  if (!cc.pairs.empty()) {
    json ps = json::array();
    for (const StationPair& p : cc.pairs) ps.push_back({p.a, p.b});
    com["pairs"] = ps;
  }
  j["commodities"] = com;
  std::vector<std::string> algs;
  for (Algorithm a : c.algorithms) algs.push_back(to_string(a));
  j["simulation"] = {{"slot_s", c.slot_s},
                     {"horizon_s", c.horizon_s},
                     {"demand_period_s", c.demand_period_s},
                     {"monitor_step_s", c.monitor_step_s},
                     {"planning_period_s", c.planning_period_s},
                     {"algorithms", algs},
                     {"delta", c.delta},
                     {"repeaters", to_string(c.repeaters)},
                     {"objective", objective_name(c.objective)},
                     {"lpp_solver", c.lpp_solver == LppSolver::kArcs ? "arcs" : "columns"},
                     {"max_age_slots", c.max_age_slots},
                     {"warmup_slots", c.warmup_slots},
                     {"seeds", c.seeds},
                     {"base_seed", c.base_seed}};
  return j.dump(2);
}

}  // namespace qsatnet::scenario
