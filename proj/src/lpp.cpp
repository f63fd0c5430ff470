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

#include "qsatnet/lpp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "qsatnet/rng.hpp"

namespace qsatnet::lpp {
namespace {

std::vector<SatelliteId> usable_dests(const Item& item) {
  std::vector<SatelliteId> out;
  for (SatelliteId d : item.dests) {
    if (std::find(item.sources.begin(), item.sources.end(), d) == item.sources.end()) {
      out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool active(const Item& item, double t) { return t >= item.start_s && t < item.end_s; }

std::string tag(std::size_t k) { return std::to_string(k); }

}  // namespace

void validate(const LppInstance& inst) {
  if (!(inst.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const std::size_t n = inst.satellites.size();
  for (const Satellite& s : inst.satellites) {
    if (!(s.lens_success > 0.0 && s.lens_success <= 1.0)) {
      throw std::invalid_argument("lens success outside (0, 1] on satellite " + tag(s.id));
    }
    if (s.lens_capacity < 0) throw std::invalid_argument("negative lens capacity");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.satellites[i].id != i) throw std::invalid_argument("satellite ids must equal their index");
  }
  for (const Isl& e : inst.isls) {
    if (e.a == e.b || e.b >= n) throw std::invalid_argument("ISL references unknown satellite");
  }
  for (const Item& it : inst.items) {
    if (!(it.weight > 0.0) || !(it.end_s > it.start_s)) {
      throw std::invalid_argument("item needs positive weight and duration");
    }
    for (SatelliteId s : it.sources)
      if (s >= n) throw std::invalid_argument("item source out of range");
    for (SatelliteId s : it.dests)
      if (s >= n) throw std::invalid_argument("item destination out of range");
  }
}

bool item_usable(const Item& item) {
  return !item.sources.empty() && !usable_dests(item).empty();
}

std::vector<double> capacity_instants(const LppInstance& inst) {
  std::vector<double> t;
  for (const Item& it : inst.items) t.push_back(it.start_s);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

Relaxation build_relaxation(const LppInstance& inst) {
  validate(inst);
  Relaxation r;
  lp::Model& m = r.model;
  const std::size_t items = inst.items.size();
  r.x_vars.resize(items);
  r.f_fwd.resize(items);
  r.f_rev.resize(items);
  r.supply_vars.resize(items);
  r.sink_vars.resize(items);
  r.eta_vars.assign(items, static_cast<std::size_t>(-1));
  const std::size_t nsat = inst.satellites.size();

  for (std::size_t k = 0; k < items; ++k) {
    const Item& it = inst.items[k];
    if (!item_usable(it)) {
      r.skipped_items.push_back(k);
      continue;
    }
    const std::string p = "i" + tag(k) + "_";
    for (std::size_t e = 0; e < inst.isls.size(); ++e) {
      const Isl& l = inst.isls[e];
      const std::string s = tag(l.a) + "_" + tag(l.b);
      r.x_vars[k].push_back(m.add_variable(p + "x_" + s, 0.0, 1.0));
      r.f_fwd[k].push_back(m.add_variable(p + "f_" + s));
      r.f_rev[k].push_back(m.add_variable(p + "f_" + tag(l.b) + "_" + tag(l.a)));
      m.add_constraint(p + "couple_" + s,
                       {{r.f_fwd[k][e], 1.0}, {r.f_rev[k][e], 1.0}, {r.x_vars[k][e], -inst.alpha}},
                       lp::Relation::kLessEqual, 0.0);
    }
    for (SatelliteId s : it.sources) {
      if (!r.supply_vars[k].count(s)) r.supply_vars[k][s] = m.add_variable(p + "src_" + tag(s));
    }
    for (SatelliteId d : usable_dests(it)) r.sink_vars[k][d] = m.add_variable(p + "dst_" + tag(d));
    r.eta_vars[k] = m.add_variable(p + "eta", 0.0, lp::kInf, it.weight);

    // Balance per satellite: out - q in = supply at sources, q in - out =
    // sink at destinations, q in - out = 0 elsewhere.
    std::vector<std::vector<lp::Term>> bal(nsat);
    for (std::size_t e = 0; e < inst.isls.size(); ++e) {
      const Isl& l = inst.isls[e];
      const double qa = inst.satellites[l.a].lens_success;
      const double qb = inst.satellites[l.b].lens_success;
      // f_fwd: a -> b enters b, leaves a.
      bal[l.b].push_back({r.f_fwd[k][e], qb});
      bal[l.a].push_back({r.f_fwd[k][e], -1.0});
      bal[l.a].push_back({r.f_rev[k][e], qa});
      bal[l.b].push_back({r.f_rev[k][e], -1.0});
    }
    for (SatelliteId v = 0; v < nsat; ++v) {
      std::vector<lp::Term> terms = bal[v];
      if (terms.empty()) continue;
      if (r.supply_vars[k].count(v)) {
        for (lp::Term& t : terms) t.coef = -t.coef;
        terms.push_back({r.supply_vars[k][v], -1.0});
      } else if (r.sink_vars[k].count(v)) {
        terms.push_back({r.sink_vars[k][v], -1.0});
      }
      m.add_constraint(p + "bal_" + tag(v), std::move(terms), lp::Relation::kEqual, 0.0);
    }
    std::vector<lp::Term> eta{{r.eta_vars[k], 1.0}};
    for (const auto& [d, var] : r.sink_vars[k]) eta.push_back({var, -1.0});
    m.add_constraint(p + "eta", std::move(eta), lp::Relation::kEqual, 0.0);
  }

  const std::vector<double> instants = capacity_instants(inst);
  for (std::size_t ti = 0; ti < instants.size(); ++ti) {
    std::vector<std::vector<lp::Term>> load(nsat);
    for (std::size_t k = 0; k < items; ++k) {
      if (r.x_vars[k].empty() || !active(inst.items[k], instants[ti])) continue;
      for (std::size_t e = 0; e < inst.isls.size(); ++e) {
        load[inst.isls[e].a].push_back({r.x_vars[k][e], 1.0});
        load[inst.isls[e].b].push_back({r.x_vars[k][e], 1.0});
      }
    }
    for (SatelliteId v = 0; v < nsat; ++v) {
      if (load[v].empty()) continue;
      m.add_constraint("lens_" + tag(v) + "_t" + tag(ti), std::move(load[v]),
                       lp::Relation::kLessEqual,
                       static_cast<double>(inst.satellites[v].lens_capacity));
    }
  }
  return r;
}

FlowSolution read_flows(const lp::Solution& sol, const Relaxation& r, const LppInstance& inst) {
  if (sol.status != lp::Status::kOptimal) {
    throw std::runtime_error(std::string("lightpath relaxation not solved to optimality: ") +
                             lp::to_string(sol.status));
  }
  FlowSolution out;
  out.skipped_items = r.skipped_items;
  out.flows.resize(inst.items.size());
  for (std::size_t k = 0; k < inst.items.size(); ++k) {
    if (r.x_vars[k].empty()) continue;
    ItemFlow& f = out.flows[k];
    for (std::size_t e = 0; e < inst.isls.size(); ++e) {
      const Isl& l = inst.isls[e];
      const double fw = sol.values[r.f_fwd[k][e]];
      const double rv = sol.values[r.f_rev[k][e]];
      if (fw > 0.0) f.flow[{l.a, l.b}] = fw;
      if (rv > 0.0) f.flow[{l.b, l.a}] = rv;
    }
    for (const auto& [s, var] : r.supply_vars[k]) {
      if (sol.values[var] > 0.0) f.supply[s] = sol.values[var];
    }
    for (const auto& [d, var] : r.sink_vars[k]) {
      if (sol.values[var] > 0.0) f.sink[d] = sol.values[var];
    }
    f.eta = sol.values[r.eta_vars[k]];
    out.objective += inst.items[k].weight * f.eta;
  }
  return out;
}

FlowSolution solve_relaxation_arc(const LppInstance& inst) {
  const Relaxation r = build_relaxation(inst);
  return read_flows(lp::solve(r.model), r, inst);
}

double path_gain(const LppInstance& inst, const std::vector<SatelliteId>& seq) {
  double g = 1.0;
  for (std::size_t i = 1; i < seq.size(); ++i) g *= inst.satellites.at(seq[i]).lens_success;
  return g;
}

std::vector<CandidateLightpath> decompose_flows(const FlowSolution& sol, const LppInstance& inst,
                                                DecompositionReport* report) {
  std::vector<CandidateLightpath> out;
  if (report) {
    report->residual_flow.assign(inst.items.size(), 0.0);
    report->cyclic_residual = false;
  }
  const double eps = 1e-9 * inst.alpha;
  for (std::size_t k = 0; k < sol.flows.size() && k < inst.items.size(); ++k) {
    const Item& item = inst.items[k];
    ItemFlow res = sol.flows[k];
    const std::vector<SatelliteId> dests = usable_dests(item);
    auto is_dest = [&](SatelliteId v) {
      return std::binary_search(dests.begin(), dests.end(), v);
    };
    std::map<SatelliteId, std::vector<SatelliteId>> next;
    for (const auto& [edge, f] : res.flow) next[edge.first].push_back(edge.second);
    std::map<std::vector<SatelliteId>, std::size_t> seen;

    const std::size_t limit = 4 * (res.flow.size() + res.supply.size() + res.sink.size()) + 16;
    for (std::size_t iter = 0; iter < limit; ++iter) {
      // Depth-first search from the sources over positive residual edges.
      std::vector<SatelliteId> path;
      std::set<SatelliteId> visited;
      bool found = false;
      for (const auto& [s, supply] : res.supply) {
        if (supply <= eps || found) continue;
        std::vector<std::pair<SatelliteId, std::size_t>> stack{{s, 0}};
        visited.insert(s);
        while (!stack.empty() && !found) {
          auto& [v, idx] = stack.back();
          if (v != s && is_dest(v) && res.sink[v] > eps) {
            found = true;
            break;
          }
          const auto it = next.find(v);
          bool pushed = false;
          if (it != next.end()) {
            while (idx < it->second.size()) {
              const SatelliteId u = it->second[idx++];
              if (visited.count(u) || res.flow[{v, u}] <= eps) continue;
              visited.insert(u);
              stack.push_back({u, 0});
              pushed = true;
              break;
            }
          }
          if (!pushed && !found) stack.pop_back();
        }
        if (found) {
          for (const auto& [v, idx] : stack) path.push_back(v);
        }
      }
      if (!found) break;

      double h = res.supply[path.front()];
      double phi = 1.0;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (i > 0) phi *= inst.satellites[path[i]].lens_success;
        h = std::min(h, res.flow[{path[i], path[i + 1]}] / phi);
      }
      const double gain = path_gain(inst, path);
      h = std::min(h, res.sink[path.back()] / gain);
      phi = 1.0;
      res.supply[path.front()] -= h;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (i > 0) phi *= inst.satellites[path[i]].lens_success;
        double& f = res.flow[{path[i], path[i + 1]}];
        f = std::max(0.0, f - h * phi);
      }
      res.sink[path.back()] = std::max(0.0, res.sink[path.back()] - h * gain);

      auto hit = seen.find(path);
      if (hit != seen.end()) {
        CandidateLightpath& c = out[hit->second];
        c.injected += h;
        c.received = c.injected * c.gain;
        c.xhat = std::min(1.0, c.injected / inst.alpha);
        continue;
      }
      CandidateLightpath c;
      c.item = k;
      c.commodity = item.commodity;
      c.epoch = item.epoch;
      c.sequence = path;
      c.injected = h;
      c.gain = gain;
      c.received = h * gain;
      c.xhat = std::min(1.0, h / inst.alpha);
      c.value = inst.alpha * gain * item.weight;
      seen[path] = out.size();
      out.push_back(std::move(c));
    }
    double left = 0.0;
    for (const auto& [edge, f] : res.flow) left += f;
    double undelivered = 0.0;
    for (const auto& [d, s] : res.sink) undelivered += s;
    if (report) {
      report->residual_flow[k] = left;
      if (left > 1e-7 * inst.alpha || undelivered > 1e-7 * inst.alpha) report->cyclic_residual = true;
    }
  }
  return out;
}

std::map<std::pair<SatelliteId, double>, double> lens_load(
    const std::vector<CandidateLightpath>& paths, const LppInstance& inst) {
  const std::vector<double> instants = capacity_instants(inst);
  std::map<std::pair<SatelliteId, double>, double> load;
  for (const CandidateLightpath& p : paths) {
    const Item& item = inst.items.at(p.item);
    for (double t : instants) {
      if (!active(item, t)) continue;
      for (std::size_t i = 0; i < p.sequence.size(); ++i) {
        const bool end = i == 0 || i + 1 == p.sequence.size();
        load[{p.sequence[i], t}] += end ? 1.0 : 2.0;
      }
    }
  }
  return load;
}

std::size_t count_capacity_violations(const std::vector<CandidateLightpath>& paths,
                                      const LppInstance& inst) {
  std::size_t n = 0;
  for (const auto& [key, load] : lens_load(paths, inst)) {
    if (load > inst.satellites.at(key.first).lens_capacity + 1e-9) ++n;
  }
  return n;
}

LppSolution prune_to_capacity(std::vector<CandidateLightpath> selection, const LppInstance& inst) {
  LppSolution out;
  out.pre_prune_count = selection.size();
  for (const CandidateLightpath& c : selection) out.pre_prune_objective += c.value;

  // Removal priority: lower alpha * G first, later index first on ties.
  auto weaker = [&](std::size_t a, std::size_t b) {
    const double ra = selection[a].gain;
    const double rb = selection[b].gain;
    if (ra != rb) return ra < rb;
    return a > b;
  };
  std::vector<bool> keep(selection.size(), true);

  // Lightpaths of one item must not share an ISL.
  std::map<std::size_t, std::vector<std::size_t>> by_item;
  for (std::size_t i = 0; i < selection.size(); ++i) by_item[selection[i].item].push_back(i);
  for (auto& [item, idx] : by_item) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return weaker(b, a); });
    std::set<Isl> used;
    for (std::size_t i : idx) {
      const auto& seq = selection[i].sequence;
      bool clash = false;
      for (std::size_t j = 0; j + 1 < seq.size() && !clash; ++j) {
        clash = used.count(Isl::make(seq[j], seq[j + 1])) > 0;
      }
      if (clash) {
        keep[i] = false;
        continue;
      }
      for (std::size_t j = 0; j + 1 < seq.size(); ++j) used.insert(Isl::make(seq[j], seq[j + 1]));
    }
  }

  // Per-path contributions to (satellite, instant) loads.
  const std::vector<double> instants = capacity_instants(inst);
  std::vector<std::vector<std::pair<std::pair<SatelliteId, double>, double>>> contrib(selection.size());
  std::map<std::pair<SatelliteId, double>, double> load;
  std::map<std::pair<SatelliteId, double>, std::set<std::size_t>> users;
  for (std::size_t i = 0; i < selection.size(); ++i) {
    const Item& item = inst.items.at(selection[i].item);
    const auto& seq = selection[i].sequence;
    for (double t : instants) {
      if (!active(item, t)) continue;
      for (std::size_t j = 0; j < seq.size(); ++j) {
        const double w = (j == 0 || j + 1 == seq.size()) ? 1.0 : 2.0;
        contrib[i].push_back({{seq[j], t}, w});
      }
    }
    if (!keep[i]) continue;
    for (const auto& [key, w] : contrib[i]) {
      load[key] += w;
      users[key].insert(i);
    }
  }
  while (true) {
    std::size_t victim = selection.size();
    for (const auto& [key, l] : load) {
      if (l <= inst.satellites[key.first].lens_capacity + 1e-9) continue;
      for (std::size_t i : users[key]) {
        if (victim == selection.size() || weaker(i, victim)) victim = i;
      }
    }
    if (victim == selection.size()) break;
    keep[victim] = false;
    for (const auto& [key, w] : contrib[victim]) {
      load[key] -= w;
      users[key].erase(victim);
    }
  }
  for (std::size_t i = 0; i < selection.size(); ++i) {
    if (keep[i]) {
      out.sol_alg += selection[i].value;
      out.selected.push_back(std::move(selection[i]));
    }
  }
  out.pruned = out.pre_prune_count - out.selected.size();
  return out;
}

LppSolution round_randomized(const std::vector<CandidateLightpath>& candidates,
                             const LppInstance& inst, std::uint64_t seed, double sol_lp) {
  SplitMix64 rng(mix64(seed ^ 0x6c70702d72720000ULL));
  std::vector<CandidateLightpath> chosen;
  for (const CandidateLightpath& c : candidates) {
    if (rng.uniform() < c.xhat) chosen.push_back(c);
  }
  LppSolution out = prune_to_capacity(std::move(chosen), inst);
  out.sol_lp = sol_lp;
  return out;
}

LppSolution round_deterministic(const std::vector<CandidateLightpath>& candidates,
                                const LppInstance& inst, double delta, double sol_lp) {
  if (!(delta > 0.0)) delta = 1e-12;
  delta = std::min(delta, 1.0);
  std::vector<CandidateLightpath> chosen;
  for (const CandidateLightpath& c : candidates) {
    if (c.xhat >= delta - 1e-12) chosen.push_back(c);
  }
  LppSolution out = prune_to_capacity(std::move(chosen), inst);
  out.sol_lp = sol_lp;
  return out;
}

}  // namespace qsatnet::lpp
