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

#include <stdexcept>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "doctest.h"
#include "qsatnet/export.hpp"
#include "qsatnet/scenario.hpp"
#include "qsatnet/scenario_config.hpp"

using namespace qsatnet;
using namespace qsatnet::scenario;

namespace {

ScenarioConfig two_station_config() {
  ScenarioConfig c;
  c.name = "pair";
  c.stations = {{{"a", 0.0, 0.0, 1.0}, true}, {{"b", 0.0, 0.5, 1.0}, true}};
  c.satellites.enabled = false;
  c.algorithms = {Algorithm::kGEdt};
  c.commodities.count = 1;
  c.commodities.total_demand = 3600.0;
  c.horizon_s = 2000.0;
  c.demand_period_s = 1000.0;
  c.seeds = 2;
  return c;
}

ScenarioConfig small_satellite_config() {
  ScenarioConfig c;
  c.name = "small";
  c.stations = {{{"x", 40.7, -74.0, 0.9}, false},
                {{"y", 51.5, -0.1, 0.9}, false},
                {{"z", 48.9, 2.4, 0.9}, false}};
  c.satellites.constellation.num_planes = 6;
  c.satellites.constellation.sats_per_plane = 8;
  c.satellites.constellation.altitude_km = 1200.0;
  c.satellites.min_elevation_deg = 10.0;
  c.commodities.count = 2;
  c.horizon_s = 3 * 3600.0;
  c.planning_period_s = 5400.0;
  c.seeds = 2;
  return c;
}

}  // namespace

TEST_CASE("gravity demands") {
  const auto d = gravity_demands({100, 200, 100}, {{0, 1}, {0, 2}, {1, 2}}, 40000);
  CHECK(d.z[0] == doctest::Approx(16000));
  CHECK(d.z[1] == doctest::Approx(8000));
  CHECK(d.z[2] == doctest::Approx(16000));
  const auto eq = gravity_demands({5, 5, 5, 5}, {{0, 1}, {2, 3}, {1, 3}}, 30);
  CHECK(eq.z[0] == doctest::Approx(10));
  CHECK(eq.z[2] == doctest::Approx(10));
  CHECK(gravity_demands({7, 9}, {{0, 1}}, 123.0).z[0] == doctest::Approx(123.0));
  CHECK_THROWS_AS(gravity_demands({0, 1}, {{0, 1}}, 1.0), std::invalid_argument);
}

TEST_CASE("distance scaling") {
  const std::vector<GroundStation> st = {{"a", 0, 0, 1}, {"b", 0, 10, 1}, {"c", 30, 40, 1}};
  const auto d1 = scale_distances(st, 1.0);
  const auto d01 = scale_distances(st, 0.1);
  CHECK(d1.at({0, 1}) == doctest::Approx(great_circle_km(st[0], st[1])));
  CHECK(d1.at({0, 1}) == doctest::Approx(6371.0 * 10.0 * 3.14159265358979 / 180.0));
  for (const auto& [p, d] : d1) CHECK(d01.at(p) == doctest::Approx(0.1 * d));
  CHECK_THROWS_AS(scale_distances(st, 0.0), std::invalid_argument);

  // 500 km at factor 0.1 is 50 km: 10 dB, channel loss 0.9.
  ScenarioConfig c;
  c.stations = {{st[0], true}, {st[1], true}};
  c.fibers.complete = false;
  c.fibers.links = {{0, 1, 500.0, {}, {}}};
  c.fibers.distance_factor = 0.1;
  const auto f = build_fibers(c, {st[0], st[1]});
  CHECK(f[0].length_km == doctest::Approx(50.0));
  CHECK(f[0].gen_success == doctest::Approx(0.1).epsilon(1e-12));

  double prev = 2.0;
  for (double factor : {1e-3, 1e-2, 1e-1, 1.0}) {
    c.fibers.distance_factor = factor;
    const double q = build_fibers(c, {st[0], st[1]})[0].gen_success;
    CHECK(q < prev);
    prev = q;
  }
}

TEST_CASE("world construction") {
  ScenarioConfig c = small_satellite_config();
  const World w = build_world(c, 9);
  CHECK(w.slots == 1080);
  CHECK(w.windows == 3);
  CHECK(w.commodities.size() == 2);
  CHECK(w.fibers.size() == 3);
  CHECK(w.constellation.satellites.size() == 48);
  for (const auto& s : w.stations) {
    CHECK(s.swap_success >= 0.85);
    CHECK(s.swap_success <= 0.98);
  }
  for (const auto& s : w.constellation.satellites) {
    CHECK(s.lens_success >= 0.95);
    CHECK(s.lens_success <= 0.98);
    CHECK(s.lens_capacity == 4);
  }
  for (int win = 0; win < w.windows; ++win) {
    double total = 0.0;
    for (const auto& com : w.commodities) total += com.demand_at(win) * 360.0;
    CHECK(std::fabs(total - 40000.0) <= 1e-6 * 40000.0);
  }
  const World again = build_world(c, 9);
  CHECK(again.stations[1].swap_success == w.stations[1].swap_success);
  CHECK(again.commodities[1].demand_at(2) == w.commodities[1].demand_at(2));
  c.commodities.count = 4;
  CHECK_THROWS(build_world(c, 9));
}

TEST_CASE("fiber-only run equals a plain plan plus protocol run") {
  const ScenarioConfig c = two_station_config();
  const World w = build_world(c, 4);
  const RunResult r = run_once(c, w, Algorithm::kGEdt);
  CHECK(r.lightpaths.empty());
  CHECK(r.edt_solves == 2);

  NetworkSnapshot snap;
  snap.stations = w.stations;
  snap.fibers = w.fibers;
  const AugmentedGraph g = build_augmented_graph(snap, {});
  protosim::SimState st(4);
  long total = 0;
  for (int win = 0; win < 2; ++win) {
    edt::EdtOptions opt;
    opt.objective = c.objective;
    opt.demand_window = win;
    opt.repeaters = std::vector<StationId>{0, 1};
    st.set_plan(g, edt::solve_edt(g, w.commodities, opt), w.commodities);
    for (int s = 0; s < 100; ++s) {
      const long d = st.run_slot().delivered[0];
      CHECK(d == static_cast<long>(r.delivered[0][win * 100 + s]));
      total += d;
    }
  }
  CHECK(r.average_throughput == doctest::Approx(total / 200.0));
}

TEST_CASE("satellite scenario end to end") {
  ScenarioConfig c = small_satellite_config();
  c.algorithms = {Algorithm::kQuesatD, Algorithm::kQuesatR, Algorithm::kGEdt};
  const ExperimentReport rep = run_experiment(c);
  CHECK(rep.runs.size() == 6);
  for (const RunResult& r : rep.runs) {
    CHECK(r.window_throughput.size() == 3);
    CHECK(r.satisfaction_ratio >= 0.0);
    CHECK(r.satisfaction_ratio <= 1.0);
    if (r.algorithm == Algorithm::kGEdt) {
      CHECK(r.planning.empty());
      continue;
    }
    CHECK(r.planning.size() == 2);
    for (const auto& p : r.planning) CHECK(p.solution.sol_alg <= p.solution.sol_lp + 1e-6);
    CHECK(!r.lightpaths.empty());
    for (const ProvisionedPath& p : r.lightpaths) {
      CHECK(p.lightpath.satellites.size() >= 2);
      CHECK(p.lightpath.success < 0.1);
    }
  }
  // A pure function of the configuration.
  const ExperimentReport again = run_experiment(c);
  for (std::size_t i = 0; i < rep.runs.size(); ++i) {
    CHECK(again.runs[i].average_throughput == rep.runs[i].average_throughput);
    CHECK(again.runs[i].lightpaths.size() == rep.runs[i].lightpaths.size());
  }
  CHECK(rep.summary(Algorithm::kQuesatD).throughput.count == 2);

  // Arc and column solvers agree on the relaxation.
  c.lpp_solver = LppSolver::kArcs;
  c.horizon_s = 3600.0;
  c.planning_period_s = 3600.0;
  const World w = build_world(c, 1);
  const auto arcs = relax_periods(c, w);
  c.lpp_solver = LppSolver::kColumns;
  const auto cols = relax_periods(c, w);
  CHECK(cols[0].flows.objective == doctest::Approx(arcs[0].flows.objective).epsilon(1e-7));
}

TEST_CASE("config parsing") {
  const std::string text = R"({
    "name": "t",
    "stations": [{"id": "a", "latitude_deg": 1, "longitude_deg": 2, "swap_success": 0.9},
                 {"id": "b", "latitude_deg": 3, "longitude_deg": 4}],
    "fibers": {"links": [{"a": "a", "b": "b", "gen_success": 0.5, "capacity": 3}]},
    "commodities": {"pairs": [["a", "b"]], "total_demand": 10, "demand_basis": "per_slot"},
    "simulation": {"algorithms": ["g-edt"], "seeds": 1, "repeaters": "all_stations"}
  })";
  const ScenarioConfig c = parse_config(text);
  CHECK(c.stations.size() == 2);
  CHECK(c.stations[0].swap_success_given);
  CHECK(!c.stations[1].swap_success_given);
  CHECK(!c.fibers.complete);
  CHECK(*c.fibers.links[0].gen_success == 0.5);
  CHECK(c.commodities.pairs.size() == 1);
  CHECK(!c.commodities.demand_per_window);
  CHECK(!c.satellites.enabled);
  CHECK(c.repeaters == RepeaterMode::kAllStations);
  CHECK(check_config(c).empty());

  const ScenarioConfig back = parse_config(config_to_json(c));
  CHECK(back.stations[1].station.id == "b");
  CHECK(back.fibers.links.size() == 1);
  CHECK(back.commodities.pairs == c.commodities.pairs);
  CHECK(back.algorithms == c.algorithms);

  CHECK_THROWS_AS(parse_config(R"({"stations": [], "bogus": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"stations": [{"id": "a", "latitude_deg": 1}]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"stations": [], "simulation": {"slot": 10}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"stations": [], "simulation": {"algorithms": ["x"]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"stations": [], "simulation": {"slot_s": "ten"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
}

TEST_CASE("config checks") {
  ScenarioConfig c = two_station_config();
  CHECK(check_config(c).empty());
  c.commodities.total_demand = 0.0;
  c.slot_s = -1.0;
  c.algorithms = {Algorithm::kQuesatD};
  CHECK(check_config(c).size() >= 3);
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
}

TEST_CASE("shipped configuration files") {
  const std::filesystem::path root = QSATNET_SOURCE_DIR;
  const ScenarioConfig desk = load_config(root / "configs" / "desk_global.json");
  CHECK(desk.stations.size() == 10);
  CHECK(desk.commodities.count == 15);
  CHECK(desk.satellites.constellation.num_planes == 10);
  CHECK(check_config(desk).empty());
  CHECK(check_config(load_config(root / "configs" / "chain.json")).empty());
  const ScenarioConfig bad = load_config(root / "tests" / "data" / "bad_scenario.json");
  CHECK(!check_config(bad).empty());
}

TEST_CASE("report files") {
  ScenarioConfig c = two_station_config();
  const ExperimentReport rep = run_experiment(c);
  const auto dir = std::filesystem::temp_directory_path() / "qsatnet_report_test";
  std::filesystem::remove_all(dir);
  io::write_report(rep, c, dir);
  for (const char* f : {"summary.json", "throughput.csv", "satisfaction.csv", "lightpaths.csv",
                        "config.json", "traces/g-edt_1.csv"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  std::ifstream in(dir / "throughput.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "window,start_s,g-edt");
  std::filesystem::remove_all(dir);
}
