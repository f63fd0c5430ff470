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

// qsatnet command line: run, sweep, validate.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qsatnet/export.hpp"
#include "qsatnet/scenario.hpp"
#include "qsatnet/scenario_config.hpp"

namespace sc = qsatnet::scenario;

namespace {

int do_validate(const std::string& path) {
  sc::ScenarioConfig config;
  try {
    config = sc::load_config(path);
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return 1;
  }
  const auto bad = sc::check_config(config);
  for (const auto& b : bad) std::cerr << path << ": " << b << '\n';
  if (!bad.empty()) return 1;
  std::cout << path << ": ok (" << config.stations.size() << " stations, "
            << (config.commodities.pairs.empty() ? config.commodities.count
                                                 : static_cast<int>(config.commodities.pairs.size()))
            << " commodities)\n";
  return 0;
}

void print_summary(const sc::ExperimentReport& rep) {
  for (const auto& s : rep.summaries) {
    std::cout << sc::to_string(s.algorithm) << ": throughput " << s.throughput.mean << " +- "
              << s.throughput.ci99_half_width << ", satisfaction " << s.satisfaction.mean
              << " +- " << s.satisfaction.ci99_half_width << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid ground-satellite entanglement distribution simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  int seeds = 0;
  std::vector<std::string> algorithms;

  auto* run = app.add_subcommand("run", "Run every configured algorithm over the seeds");
  run->add_option("--config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--seeds", seeds, "Number of seeds (overrides the config)")->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--algorithms", algorithms, "Subset of quesat-d, quesat-r, g-edt");

  std::string param;
  std::vector<double> values;
  auto* sweep = app.add_subcommand("sweep", "Repeat the experiment over parameter values");
  sweep->add_option("--config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--param", param, "distance_factor, commodities, delta or total_demand")->required();
  sweep->add_option("--values", values, "Parameter values")->required();
  sweep->add_option("--seeds", seeds, "Number of seeds (overrides the config)")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--algorithms", algorithms, "Subset of quesat-d, quesat-r, g-edt");

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("--config", config_path, "Scenario JSON")->required();

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return do_validate(config_path);

  try {
    sc::ScenarioConfig config = sc::load_config(config_path);
    if (seeds > 0) config.seeds = seeds;
    if (!algorithms.empty()) {
      config.algorithms.clear();
      for (const auto& a : algorithms) config.algorithms.push_back(sc::parse_algorithm(a));
    }
    if (const auto bad = sc::check_config(config); !bad.empty()) {
      for (const auto& b : bad) std::cerr << config_path << ": " << b << '\n';
      return 1;
    }
    if (run->parsed()) {
      const sc::ExperimentReport rep = sc::run_experiment(config);
      qsatnet::io::write_report(rep, config, out_dir);
      print_summary(rep);
      return 0;
    }
    const auto points = sc::run_sweep(config, param, values);
    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / "sweep.csv");
    qsatnet::io::write_sweep_csv(points, param, out);
    for (const auto& p : points) {
      std::cout << param << " = " << p.value << '\n';
      print_summary(p.report);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
