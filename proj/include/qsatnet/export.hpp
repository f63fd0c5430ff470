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

// Run outputs: summary JSON and plot-ready CSV files.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qsatnet/edt.hpp"
#include "qsatnet/scenario.hpp"

namespace qsatnet::io {

// commodity,epoch,start_s,end_s,sat_sequence,q_path,alpha with the
// algorithm and seed in front; satellites joined by '-'.
void write_lightpaths_csv(const scenario::ExperimentReport& report, std::ostream& out);

// One row per demand window, one column per algorithm (mean over seeds).
void write_throughput_csv(const scenario::ExperimentReport& report, double demand_period_s,
                          std::ostream& out);
void write_satisfaction_csv(const scenario::ExperimentReport& report, double demand_period_s,
                            std::ostream& out);

// Delivered ebits per slot and commodity of one run.
void write_trace_csv(const scenario::RunResult& run, double slot_s, std::ostream& out);

void write_plan_csv(const edt::EdtPlan& plan, std::ostream& out);

std::string summary_json(const scenario::ExperimentReport& report,
                         const scenario::ScenarioConfig& config);

// summary.json, throughput.csv, satisfaction.csv, lightpaths.csv, config.json
// and traces/<algorithm>_<seed>.csv under `dir`.
void write_report(const scenario::ExperimentReport& report, const scenario::ScenarioConfig& config,
                  const std::filesystem::path& dir);

// sweep.csv with one row per (value, algorithm).
void write_sweep_csv(const std::vector<scenario::SweepPoint>& points, const std::string& parameter,
                     std::ostream& out);

}  // namespace qsatnet::io
