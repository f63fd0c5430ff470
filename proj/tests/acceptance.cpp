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

// Acceptance gate. One line per criterion; exits nonzero if any fails. An
// optional first argument overrides the source tree root used to find
// configs/.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qsatnet/channel.hpp"
#include "qsatnet/edt.hpp"
#include "qsatnet/lpp.hpp"
#include "qsatnet/metrics.hpp"
#include "qsatnet/protosim.hpp"
#include "qsatnet/scenario.hpp"
#include "qsatnet/scenario_config.hpp"

using namespace qsatnet;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kChannelTol = 1e-12;
constexpr double kChainTol = 1e-6;
constexpr double kEnumerationTol = 1e-3;
constexpr double kLppTol = 1e-6;
constexpr double kDecompositionTol = 1e-6;
constexpr double kFrequencyLo = 0.585;
constexpr double kFrequencyHi = 0.615;
constexpr double kSigmas = 3.0;
constexpr long kMinSlots = 10000;
constexpr double kConvergenceTol = 0.05;
constexpr double kTrendFactor = 2.0;

fs::path g_root = QSATNET_SOURCE_DIR;
int g_failed = 0;

void report(int id, const char* title, bool pass, const std::string& detail, double seconds) {
  std::printf("[%s] %2d %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, title, detail.c_str(),
              seconds);
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

void run(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, title, o.pass, o.detail, s);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Commodity commodity(std::size_t id, StationId s, StationId d, double z = 0.0) {
  Commodity c;
  c.id = id;
  c.source = s;
  c.dest = d;
  c.demand_series[0] = z;
  return c;
}

// Stations 0..L joined by fibers; end stations never swap.
AugmentedGraph chain(const std::vector<double>& interior_swap, const std::vector<double>& capacity,
                     const std::vector<double>& success) {
  std::vector<GroundStation> st = {{"s0", 0, 0, 1.0}};
  for (std::size_t i = 0; i < interior_swap.size(); ++i) {
    st.push_back({"s" + std::to_string(i + 1), 0, 0, interior_swap[i]});
  }
  st.push_back({"s" + std::to_string(st.size()), 0, 0, 1.0});
  std::vector<AugmentedEdge> e;
  for (std::size_t i = 0; i < capacity.size(); ++i) {
    e.push_back({StationPair::make(i, i + 1), EdgeKind::kFiber, capacity[i], success[i], i});
  }
  return AugmentedGraph(st, e);
}

AugmentedGraph random_graph(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> q(0.6, 1.0), u(0.0, 1.0);
  std::uniform_int_distribution<int> cap(1, 10);
  std::vector<GroundStation> st;
  for (std::size_t i = 0; i < n; ++i) st.push_back({"s" + std::to_string(i), 0, 0, q(rng)});
  std::vector<AugmentedEdge> e;
  for (StationId a = 0; a < n; ++a) {
    for (StationId b = a + 1; b < n; ++b) {
      if (b == a + 1 || u(rng) < 0.5) {
        e.push_back({StationPair::make(a, b), EdgeKind::kFiber, double(cap(rng)), q(rng), e.size()});
      }
    }
  }
  return AugmentedGraph(st, e);
}

lpp::LppInstance random_lpp(std::mt19937_64& rng, std::size_t n_sats, std::size_t n_items,
                            int capacity) {
  std::uniform_real_distribution<double> q(0.8, 1.0), u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n_sats) - 1);
  lpp::LppInstance inst;
  for (std::size_t i = 0; i < n_sats; ++i) {
    Satellite s;
    s.id = i;
    s.lens_success = q(rng);
    s.lens_capacity = capacity + pick(rng) % 3;
    inst.satellites.push_back(s);
  }
  std::set<Isl> isls;
  for (SatelliteId v = 0; v < n_sats; ++v) {
    isls.insert(Isl::make(v, (v + 1) % n_sats));
    if (u(rng) < 0.5) {
      const auto w = static_cast<SatelliteId>(pick(rng));
      if (w != v) isls.insert(Isl::make(v, w));
    }
  }
  inst.isls.assign(isls.begin(), isls.end());
  for (std::size_t k = 0; k < n_items; ++k) {
    lpp::Item it;
    for (int j = 0; j < 1 + pick(rng) % 2; ++j) it.sources.push_back(pick(rng));
    for (int j = 0; j < 1 + pick(rng) % 2; ++j) it.dests.push_back(pick(rng));
    std::sort(it.sources.begin(), it.sources.end());
    it.sources.erase(std::unique(it.sources.begin(), it.sources.end()), it.sources.end());
    it.commodity = k % 4;
    it.epoch = static_cast<int>(k);
    it.start_s = 10.0 * (pick(rng) % 3);
    it.end_s = it.start_s + 10.0 * (1 + pick(rng) % 2);
    it.weight = 1.0 + pick(rng) % 5;
    inst.items.push_back(it);
  }
  return inst;
}

// Mean delivered total per slot against the planned total, over `slots`.
struct BoundCheck {
  double realized = 0.0;
  double planned = 0.0;
  double half_width = 0.0;
  bool ok() const { return realized <= planned + half_width; }
};

BoundCheck simulate(const AugmentedGraph& g, const std::vector<Commodity>& coms,
                    const edt::EdtPlan& plan, std::uint64_t seed, long slots) {
  protosim::SimState st(seed);
  st.set_plan(g, plan, coms);
  std::vector<double> totals;
  totals.reserve(slots);
  for (long s = 0; s < slots; ++s) {
    const auto t = st.run_slot();
    long sum = 0;
    for (long d : t.delivered) sum += d;
    totals.push_back(static_cast<double>(sum));
  }
  const auto stats = metrics::batch_means(totals);
  return {stats.mean, plan.total_rate(), stats.ci99_half_width};
}

scenario::ScenarioConfig desk() { return scenario::load_config(g_root / "configs" / "desk_global.json"); }

const scenario::RunResult& find_run(const scenario::ExperimentReport& r, scenario::Algorithm a,
                                    std::uint64_t seed) {
  for (const auto& run : r.runs) {
    if (run.algorithm == a && run.seed == seed) return run;
  }
  throw std::runtime_error("missing run");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_root = argv[1];

  run(1, "channel formulas", [] {
    using namespace channel;
    struct Case {
      double got, want;
    };
    const double lens[] = {0.95, 0.96};
    const std::vector<Case> cases = {
        {fiber_loss({0.2, 50.0}), 0.9},
        {fiber_loss({0.2, 0.0}), 0.0},
        {fiber_loss({0.2, 100.0}), 0.99},
        {fiber_loss({0.25, 20.0}), 1.0 - std::pow(10.0, -0.5)},
        {link_success({1.0, 1}, 0.9), 0.1},
        {link_success({0.5, 3}, 0.9), 0.142625},
        {link_success({1.0, 2}, 0.0), 1.0},
        {fiber_link_success({1.0, 1}, 0.2, 50.0), 0.1},
        {lightpath_success(0.2, lens, 0.5), 0.0912},
    };
    double worst = 0.0;
    for (const Case& c : cases) worst = std::max(worst, std::fabs(c.got - c.want));
    return Outcome{worst <= kChannelTol, fmt("%zu cases, max error %.2e, tol %.0e", cases.size(),
                                             worst, kChannelTol)};
  });

  run(2, "chain oracle", [] {
    std::mt19937_64 rng(1002);
    std::uniform_real_distribution<double> q(0.5, 1.0);
    std::uniform_int_distribution<int> cap(1, 10), len(2, 5);
    int mismatches = 0, below = 0;
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      const int links = len(rng);
      std::vector<double> swap(links - 1), c(links), s(links), rate(links);
      for (double& x : swap) x = q(rng);
      for (int i = 0; i < links; ++i) {
        c[i] = cap(rng);
        s[i] = q(rng);
        rate[i] = c[i] * s[i];
      }
      const auto plan = edt::solve_edt(chain(swap, c, s), {commodity(0, 0, links)}, {});
      const double want = oracles::chain_bottleneck_rate(swap, rate);
      const double diff = plan.zeta[0] - want;
      worst = std::max(worst, std::fabs(diff));
      if (std::fabs(diff) > kChainTol) ++mismatches;
      if (diff < -kChainTol) ++below;
    }
    return Outcome{mismatches == 0,
                   fmt("%d of 100 chains differ from the bottleneck formula by more than %.0e "
                       "(%d below it), max difference %.4f",
                       mismatches, kChainTol, below, worst)};
  });

  run(3, "EDT against basis enumeration", [] {
    std::mt19937_64 rng(1003);
    std::uniform_real_distribution<double> z(0.0, 6.0);
    double worst = 0.0;
    int n_cases = 0;
    for (int rep = 0; rep < 60; ++rep) {
      const std::size_t n = 3 + rep % 2;
      const AugmentedGraph g = random_graph(rng, n);
      const std::vector<Commodity> coms = {commodity(0, 0, n - 1, z(rng)), commodity(1, 1, 2, z(rng))};
      const bool capped = rep % 2 == 0;
      edt::EdtOptions opt;
      opt.objective = capped ? edt::Objective::kMaxTotalDemandCapped : edt::Objective::kMaxTotal;
      const double lp = edt::solve_edt(g, coms, opt).total_rate();
      worst = std::max(worst, std::fabs(lp - oracles::edt_basis_enumeration(g, coms, capped)));
      ++n_cases;
    }
    return Outcome{worst <= kEnumerationTol,
                   fmt("%d instances with 3-4 stations, max difference %.2e, tol %.0e", n_cases,
                       worst, kEnumerationTol)};
  });

  run(4, "LPP relaxation hand cases", [] {
    auto sats = [](std::size_t n, double q, int cap) {
      std::vector<Satellite> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = {i, 0, 0, cap, q};
      return out;
    };
    lpp::Item it;
    it.end_s = 10.0;
    lpp::LppInstance one;
    one.satellites = sats(2, 0.95, 1);
    one.isls = {{0, 1}};
    it.sources = {0};
    it.dests = {1};
    one.items = {it};
    lpp::LppInstance two;
    two.satellites = sats(3, 0.9, 2);
    two.isls = {{0, 2}, {0, 1}, {1, 2}};
    it.dests = {2};
    two.items = {it};
    const double a1 = lpp::solve_relaxation_arc(one).objective;
    const double p1 = lpp::solve_relaxation_paths(one).objective;
    const double a2 = lpp::solve_relaxation_arc(two).objective;
    const double p2 = lpp::solve_relaxation_paths(two).objective;
    const double err = std::max({std::fabs(a1 - 9.5), std::fabs(p1 - 9.5), std::fabs(a2 - 17.1),
                                 std::fabs(p2 - 17.1)});
    return Outcome{err <= kLppTol, fmt("single ISL %.9f, two paths %.9f (lens capacity 2), tol %.0e",
                                       p1, p2, kLppTol)};
  });

  run(5, "decomposition reconstruction", [] {
    std::mt19937_64 rng(1005);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      const auto inst = random_lpp(rng, 6 + rep % 8, 1 + rep % 6, 1 + rep % 2);
      const auto sol = rep % 2 ? lpp::solve_relaxation_arc(inst) : lpp::solve_relaxation_paths(inst);
      std::vector<double> rec(inst.items.size(), 0.0);
      for (const auto& c : lpp::decompose_flows(sol, inst)) rec[c.item] += c.received;
      for (std::size_t k = 0; k < rec.size(); ++k) {
        worst = std::max(worst, std::fabs(rec[k] - sol.flows[k].eta));
      }
    }
    return Outcome{worst <= kDecompositionTol,
                   fmt("100 instances, max |sum received - eta| %.2e, tol %.0e", worst,
                       kDecompositionTol)};
  });

  run(6, "rounding feasibility", [] {
    std::mt19937_64 rng(1006);
    std::size_t violations = 0, before = 0;
    for (int rep = 0; rep < 100; ++rep) {
      const auto inst = random_lpp(rng, 10, 6 + rep % 4, 1);
      const auto sol = lpp::solve_relaxation_paths(inst);
      const auto cands = lpp::decompose_flows(sol, inst);
      for (const auto& s : {lpp::round_randomized(cands, inst, rep, sol.objective),
                            lpp::round_deterministic(cands, inst, 0.5, sol.objective)}) {
        violations += lpp::count_capacity_violations(s.selected, inst);
        before += s.pruned;
      }
    }
    return Outcome{violations == 0, fmt("200 roundings, %zu violations after pruning, %zu paths pruned",
                                        violations, before)};
  });

  run(7, "randomized rounding expectation", [] {
    std::mt19937_64 rng(1007);
    const auto inst = random_lpp(rng, 12, 6, 2);
    const auto sol = lpp::solve_relaxation_paths(inst);
    auto cands = lpp::decompose_flows(sol, inst);
    lpp::CandidateLightpath probe;
    probe.item = 0;
    probe.sequence = {inst.isls[0].a, inst.isls[0].b};
    probe.xhat = 0.6;
    probe.gain = lpp::path_gain(inst, probe.sequence);
    probe.value = inst.alpha * probe.gain;
    const int kSeeds = 10000;
    int hits = 0;
    for (int s = 0; s < kSeeds; ++s) hits += lpp::round_randomized({probe}, inst, s).selected.size();
    const double freq = double(hits) / kSeeds;

    double expect = 0.0, var = 0.0;
    for (const auto& c : cands) {
      expect += c.xhat * c.value;
      var += c.xhat * (1.0 - c.xhat) * c.value * c.value;
    }
    double mean = 0.0;
    for (int s = 0; s < kSeeds; ++s) {
      mean += lpp::round_randomized(cands, inst, 50000 + s, sol.objective).pre_prune_objective;
    }
    mean /= kSeeds;
    const double se = std::sqrt(var / kSeeds);
    const bool ok = freq >= kFrequencyLo && freq <= kFrequencyHi &&
                    std::fabs(mean - expect) <= kSigmas * se;
    return Outcome{ok, fmt("frequency %.4f in [%.3f, %.3f]; mean %.4f vs expectation %.4f, "
                           "3 sigma %.4f (%zu candidates)",
                           freq, kFrequencyLo, kFrequencyHi, mean, expect, kSigmas * se,
                           cands.size())};
  });

  // Shared by 8, 10 and 12.
  scenario::ExperimentReport desk_report;
  bool have_desk = false;
  auto ensure_desk = [&] {
    if (!have_desk) {
      desk_report = scenario::run_experiment(desk());
      have_desk = true;
    }
  };

  run(8, "long-run rate bound", [&] {
    int checked = 0, failed = 0;
    std::string worst;
    auto note = [&](const std::string& name, const BoundCheck& b) {
      ++checked;
      if (!b.ok()) {
        ++failed;
        worst += fmt(" %s %.4f > %.4f + %.4f;", name.c_str(), b.realized, b.planned, b.half_width);
      }
    };
    const auto g = chain({0.9}, {10, 10}, {0.8, 0.8});
    const std::vector<Commodity> one = {commodity(0, 0, 2)};
    note("chain", simulate(g, one, edt::solve_edt(g, one, {}), 8, kMinSlots));

    std::mt19937_64 rng(1008);
    std::uniform_real_distribution<double> z(0.5, 6.0);
    for (int rep = 0; rep < 10; ++rep) {
      const std::size_t n = 4 + rep % 2;
      const auto rg = random_graph(rng, n);
      const std::vector<Commodity> coms = {commodity(0, 0, n - 1, z(rng)), commodity(1, 1, n - 2, z(rng)),
                                           commodity(2, 0, 2, z(rng))};
      edt::EdtOptions opt;
      opt.objective = rep % 2 ? edt::Objective::kMaxTotal : edt::Objective::kMaxTotalDemandCapped;
      opt.repeaters = std::nullopt;
      note(fmt("random%d", rep), simulate(rg, coms, edt::solve_edt(rg, coms, opt), 100 + rep, kMinSlots));
    }

    // Full desk runs: plans change over the day, so pool the seeds.
    ensure_desk();
    for (auto alg : {scenario::Algorithm::kQuesatD, scenario::Algorithm::kQuesatR,
                     scenario::Algorithm::kGEdt}) {
      std::vector<double> totals;
      double planned = 0.0;
      int runs = 0;
      for (const auto& r : desk_report.runs) {
        if (r.algorithm != alg) continue;
        const std::size_t slots = r.delivered.empty() ? 0 : r.delivered[0].size();
        for (std::size_t s = 0; s < slots; ++s) {
          double sum = 0.0;
          for (const auto& c : r.delivered) sum += c[s];
          totals.push_back(sum);
        }
        planned += r.planned_total_rate;
        ++runs;
      }
      if (static_cast<long>(totals.size()) < kMinSlots) throw std::runtime_error("desk run too short");
      const auto st = metrics::batch_means(totals);
      note(fmt("desk-%s", scenario::to_string(alg)), {st.mean, planned / runs, st.ci99_half_width});
    }
    return Outcome{failed == 0, fmt("%d scenarios of >= %ld slots, %d above bound.%s", checked,
                                    kMinSlots, failed, worst.c_str())};
  });

  run(9, "chain convergence", [] {
    auto cfg = scenario::load_config(g_root / "configs" / "chain.json");
    cfg.seeds = 1;
    const auto rep = scenario::run_experiment(cfg);
    const auto& r = rep.runs.at(0);
    const long slots = static_cast<long>(r.delivered.at(0).size());
    const double err = std::fabs(r.total_rate - 7.2) / 7.2;
    return Outcome{err <= kConvergenceTol && slots >= kMinSlots,
                   fmt("%ld slots, realized %.4f vs 7.2, relative error %.4f, tol %.2f", slots,
                       r.total_rate, err, kConvergenceTol)};
  });

  run(10, "desk-scale trend", [&] {
    ensure_desk();
    const auto& g = desk_report.summary(scenario::Algorithm::kGEdt);
    bool ok = true;
    std::string d;
    for (auto alg : {scenario::Algorithm::kQuesatD, scenario::Algorithm::kQuesatR}) {
      const auto& s = desk_report.summary(alg);
      const double ratio = s.throughput.mean / g.throughput.mean;
      const bool thr = ratio >= kTrendFactor;
      const bool sat = s.satisfaction.mean > g.satisfaction.mean;
      ok = ok && thr && sat;
      d += fmt("%s throughput %.4f (%.2fx %s), satisfaction %.4f (%s); ", scenario::to_string(alg),
               s.throughput.mean, ratio, thr ? "ok" : "low", s.satisfaction.mean,
               sat ? "higher" : "not higher");
    }
    d += fmt("g-edt throughput %.4f, satisfaction %.4f; %zu seeds", g.throughput.mean,
             g.satisfaction.mean, desk_report.seeds.size());
    return Outcome{ok, d};
  });

  run(11, "distance sweep trend", [] {
    auto cfg = desk();
    cfg.seeds = 1;
    cfg.algorithms = {scenario::Algorithm::kQuesatD, scenario::Algorithm::kGEdt};
    const std::vector<double> factors = {1e-3, 1e-2, 1e-1, 1.0};
    const auto points = scenario::run_sweep(cfg, "distance_factor", factors);
    std::vector<double> g, ratio;
    std::string d;
    for (const auto& p : points) {
      const double ge = p.report.summary(scenario::Algorithm::kGEdt).throughput.mean;
      const double qd = p.report.summary(scenario::Algorithm::kQuesatD).throughput.mean;
      g.push_back(ge);
      ratio.push_back(ge > 0.0 ? qd / ge : INFINITY);
      d += fmt("f=%g g-edt %.4g quesat-d %.4g; ", p.value, ge, qd);
    }
    bool mono = true, ratio_up = true;
    for (std::size_t i = 1; i < g.size(); ++i) {
      mono = mono && g[i] <= g[i - 1];
      ratio_up = ratio_up && ratio[i] >= ratio[i - 1];
    }
    const bool adv = ratio[1] > 1.0;
    d += fmt("g-edt non-increasing %s, ratio non-decreasing %s, advantage at 1e-2 %s",
             mono ? "yes" : "no", ratio_up ? "yes" : "no", adv ? "yes" : "no");
    return Outcome{mono && ratio_up && adv, d};
  });

  run(12, "more repeaters never hurt", [] {
    bool ok = true;
    std::string d;
    // At factor 0.1 only the shortest fiber is usable, so the third variant
    // shortens fibers until intermediate stations matter.
    const std::vector<std::pair<std::size_t, double>> variants = {{15, 0.1}, {5, 0.1}, {5, 0.01}};
    for (const auto& [count, factor] : variants) {
      auto cfg = desk();
      cfg.seeds = 1;
      cfg.commodities.count = count;
      cfg.fibers.distance_factor = factor;
      cfg.algorithms = {scenario::Algorithm::kQuesatD, scenario::Algorithm::kGEdt};
      cfg.repeaters = scenario::RepeaterMode::kCommoditiesOnly;
      const auto restricted = scenario::run_experiment(cfg);
      cfg.repeaters = scenario::RepeaterMode::kAllStations;
      const auto all = scenario::run_experiment(cfg);
      for (auto alg : cfg.algorithms) {
        const auto& r1 = find_run(restricted, alg, cfg.base_seed);
        const auto& r2 = find_run(all, alg, cfg.base_seed);
        const bool good = r2.total_rate >= r1.total_rate;
        ok = ok && good;
        d += fmt("%zu commodities factor %g %s: %.4f vs %.4f; ", count, factor,
                 scenario::to_string(alg), r2.total_rate, r1.total_rate);
      }
    }
    return Outcome{ok, d + "all stations vs commodity endpoints"};
  });

  std::printf("%d criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
