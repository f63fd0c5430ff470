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

#include "qsatnet/export.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "qsatnet/scenario_config.hpp"

namespace qsatnet::io {
namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << std::setprecision(10);
  return out;
}

nlohmann::json stats_json(const metrics::SummaryStats& s) {
  return {{"mean", s.mean}, {"stddev", s.stddev}, {"count", s.count},
          {"ci99_half_width", s.ci99_half_width}};
}

void write_windows(const scenario::ExperimentReport& report, double period,
                   bool throughput, std::ostream& out) {
  out << "window,start_s";
  for (const auto& s : report.summaries) out << ',' << scenario::to_string(s.algorithm);
  out << '\n';
  std::size_t windows = 0;
  for (const auto& s : report.summaries) windows = std::max(windows, s.window_throughput.size());
  for (std::size_t w = 0; w < windows; ++w) {
    out << w << ',' << static_cast<double>(w) * period;
    for (const auto& s : report.summaries) {
      const auto& v = throughput ? s.window_throughput : s.window_satisfaction;
      out << ',' << (w < v.size() ? v[w] : 0.0);
    }
    out << '\n';
  }
}

}  // namespace

void write_lightpaths_csv(const scenario::ExperimentReport& report, std::ostream& out) {
  out << "algorithm,seed,commodity,epoch,start_s,end_s,sat_sequence,q_path,alpha\n";
  for (const scenario::RunResult& r : report.runs) {
    for (const scenario::ProvisionedPath& p : r.lightpaths) {
      out << scenario::to_string(r.algorithm) << ',' << r.seed << ',' << p.candidate.commodity
          << ',' << p.candidate.epoch << ',' << p.start_s << ',' << p.end_s << ',';
      for (std::size_t i = 0; i < p.lightpath.satellites.size(); ++i) {
        out << (i ? "-" : "") << p.lightpath.satellites[i];
      }
      out << ',' << p.lightpath.success << ',' << p.lightpath.capacity << '\n';
    }
  }
}

void write_throughput_csv(const scenario::ExperimentReport& report, double demand_period_s,
                          std::ostream& out) {
  write_windows(report, demand_period_s, true, out);
}

void write_satisfaction_csv(const scenario::ExperimentReport& report, double demand_period_s,
                            std::ostream& out) {
  write_windows(report, demand_period_s, false, out);
}

void write_trace_csv(const scenario::RunResult& run, double slot_s, std::ostream& out) {
  out << "slot,time_s";
  for (std::size_t i = 0; i < run.delivered.size(); ++i) out << ",c" << i;
  out << '\n';
  const std::size_t slots = run.delivered.empty() ? 0 : run.delivered.front().size();
  for (std::size_t s = 0; s < slots; ++s) {
    out << s << ',' << static_cast<double>(s) * slot_s;
    for (const auto& c : run.delivered) out << ',' << c[s];
    out << '\n';
  }
}

void write_plan_csv(const edt::EdtPlan& plan, std::ostream& out) {
  out << "kind,k,m,n,value\n";
  for (const auto& [pair, g] : plan.generation) out << "gen,," << pair.a << ',' << pair.b << ',' << g << '\n';
  for (const edt::Swap& s : plan.swaps) {
    out << "swap," << s.at.k << ',' << s.at.m << ',' << s.at.n << ',' << s.rate << '\n';
  }
  for (std::size_t i = 0; i < plan.zeta.size(); ++i) out << "zeta,," << i << ",," << plan.zeta[i] << '\n';
}

std::string summary_json(const scenario::ExperimentReport& report,
                         const scenario::ScenarioConfig& config) {
  using nlohmann::json;
  json j;
  j["name"] = report.name;
  j["seeds"] = report.seeds;
  j["assumptions"] = {
      {"lens_capacity", config.satellites.lens_capacity},
      {"station_list", "stand-in city list, overridable"},
      {"demand_basis", config.commodities.demand_per_window ? "per_window" : "per_slot"},
      {"warmup_slots", config.warmup_slots},
      {"repeaters", scenario::to_string(config.repeaters)}};
  json algs = json::array();
  for (const auto& s : report.summaries) {
    algs.push_back({{"algorithm", scenario::to_string(s.algorithm)},
                    {"average_throughput", stats_json(s.throughput)},
                    {"satisfaction_ratio", stats_json(s.satisfaction)}});
  }
  j["algorithms"] = algs;
  json runs = json::array();
  for (const scenario::RunResult& r : report.runs) {
    json planning = json::array();
    for (const auto& p : r.planning) {
      planning.push_back({{"start_s", p.start_s},
                          {"end_s", p.end_s},
                          {"items", p.items},
                          {"skipped_items", p.skipped_items},
                          {"candidates", p.candidates},
                          {"sol_lp", p.solution.sol_lp},
                          {"sol_alg", p.solution.sol_alg},
                          {"pre_prune_objective", p.solution.pre_prune_objective},
                          {"selected", p.solution.selected.size()},
                          {"pruned", p.solution.pruned},
                          {"solver_rounds", p.solver.rounds},
                          {"solver_columns", p.solver.columns},
                          {"solver_blocks", p.solver.blocks}});
    }
    runs.push_back({{"algorithm", scenario::to_string(r.algorithm)},
                    {"seed", r.seed},
                    {"average_throughput", r.average_throughput},
                    {"satisfaction_ratio", r.satisfaction_ratio},
                    {"total_rate", r.total_rate},
                    {"planned_total_rate", r.planned_total_rate},
                    {"lightpaths", r.lightpaths.size()},
                    {"edt_solves", r.edt_solves},
                    {"plan_changes", r.plan_changes},
                    {"planning", planning}});
  }
  j["runs"] = runs;
  return j.dump(2);
}

void write_report(const scenario::ExperimentReport& report, const scenario::ScenarioConfig& config,
                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "traces");
  open_out(dir / "summary.json") << summary_json(report, config) << '\n';
  open_out(dir / "config.json") << scenario::config_to_json(config) << '\n';
  {
    auto out = open_out(dir / "throughput.csv");
    write_throughput_csv(report, config.demand_period_s, out);
  }
  {
    auto out = open_out(dir / "satisfaction.csv");
    write_satisfaction_csv(report, config.demand_period_s, out);
  }
  {
    auto out = open_out(dir / "lightpaths.csv");
    write_lightpaths_csv(report, out);
  }
  for (const scenario::RunResult& r : report.runs) {
    auto out = open_out(dir / "traces" /
                        (std::string(scenario::to_string(r.algorithm)) + "_" +
                         std::to_string(r.seed) + ".csv"));
    write_trace_csv(r, config.slot_s, out);
  }
}

void write_sweep_csv(const std::vector<scenario::SweepPoint>& points, const std::string& parameter,
                     std::ostream& out) {
  out << parameter << ",algorithm,throughput_mean,throughput_ci99,satisfaction_mean,satisfaction_ci99\n";
  for (const scenario::SweepPoint& p : points) {
    for (const auto& s : p.report.summaries) {
      out << p.value << ',' << scenario::to_string(s.algorithm) << ',' << s.throughput.mean << ','
          << s.throughput.ci99_half_width << ',' << s.satisfaction.mean << ','
          << s.satisfaction.ci99_half_width << '\n';
    }
  }
}

}  // namespace qsatnet::io
