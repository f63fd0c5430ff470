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

// Column generation for the lightpath relaxation.
//
// Columns are lightpath flows h_p >= 0 of one item. For edge i of a path
// v0 .. vk the carried flow is phi_i * h_p with phi_i = q(v1) ... q(vi), so
// the arc constraints become
//
//   edge rows  (item, e):  sum_p phi_p(e) h_p <= alpha
//   lens rows  (v, t):     sum over items active at t, paths p of
//                          (sum of phi_p(e) over edges e of p at v) / alpha * h_p <= c_v
//
// with x = (f + f') / alpha eliminated. A fresh column carries the bound
// h_p <= alpha, which is its own first-edge row; once that row is added
// explicitly the bound is dropped so its dual is visible to pricing.
//
// Pricing is a longest-path recursion over satellites with discount q:
//   W(v) = max_u [ -cost(v, u) + q(u) * max(stop(u), W(u)) ]
// where stop(u) is the item weight at destination candidates and cost adds
// the edge-row dual and the lens-row duals of both endpoints divided by
// alpha. A column from source s improves the master iff W(s) > 0.
//
// Items start in singleton blocks; a lens row merges every item it touches.
// Rows are only present in one block, and every row is kept complete, so the
// union of block optima with no violated row and no improving column is the
// optimum of the full relaxation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "qsatnet/lpp.hpp"

namespace qsatnet::lpp {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Column {
  std::size_t item = 0;
  std::vector<SatelliteId> seq;
  std::vector<std::size_t> edges;  // ISL index per hop
  std::vector<double> phi;         // flow factor per hop
  double gain = 0.0;
  bool bounded = true;
  double value = 0.0;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

class PathSolver {
 public:
  PathSolver(const LppInstance& inst, const PathSolverOptions& opt)
      : inst_(inst), opt_(opt), sets_(inst.items.size()) {}

  FlowSolution run(PathSolverStats* stats);

 private:
  using EdgeRow = std::pair<std::size_t, std::size_t>;   // item, isl
  using LensRow = std::pair<SatelliteId, std::size_t>;   // satellite, instant

  void prepare();
  void add_column(Column c);
  void add_lens_row(const LensRow& row);
  void add_edge_row(const EdgeRow& row);
  void solve_block(std::size_t root);
  bool add_violated_rows();
  bool price_item(std::size_t item);
  double lens_coef(const Column& c, SatelliteId v) const;
  void merge(std::size_t a, std::size_t b);

  const LppInstance& inst_;
  PathSolverOptions opt_;
  DisjointSets sets_;

  std::vector<bool> usable_;
  std::vector<std::vector<SatelliteId>> dests_;
  std::vector<std::vector<std::size_t>> item_instants_;
  std::vector<double> instants_;
  std::vector<std::vector<std::pair<SatelliteId, std::size_t>>> adj_;  // neighbour, isl

  std::vector<Column> columns_;
  std::vector<std::vector<std::size_t>> item_columns_;
  std::map<std::pair<std::size_t, std::vector<SatelliteId>>, std::size_t> column_index_;
  std::set<EdgeRow> edge_rows_;
  std::set<LensRow> lens_rows_;
  std::map<LensRow, std::size_t> lens_row_owner_;  // any item in the row's block

  std::map<EdgeRow, double> edge_dual_;
  std::map<LensRow, double> lens_dual_;
  std::set<std::size_t> dirty_;   // block roots to re-solve
  std::set<std::size_t> stale_;   // items whose duals changed since pricing
  PathSolverStats stats_;
};

void PathSolver::prepare() {
  validate(inst_);
  const std::size_t n = inst_.items.size();
  instants_ = capacity_instants(inst_);
  usable_.assign(n, false);
  dests_.resize(n);
  item_instants_.resize(n);
  item_columns_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Item& it = inst_.items[k];
    usable_[k] = item_usable(it);
    for (SatelliteId d : it.dests) {
      if (std::find(it.sources.begin(), it.sources.end(), d) == it.sources.end()) {
        dests_[k].push_back(d);
      }
    }
    std::sort(dests_[k].begin(), dests_[k].end());
    for (std::size_t t = 0; t < instants_.size(); ++t) {
      if (instants_[t] >= it.start_s && instants_[t] < it.end_s) item_instants_[k].push_back(t);
    }
  }
  adj_.assign(inst_.satellites.size(), {});
  for (std::size_t e = 0; e < inst_.isls.size(); ++e) {
    adj_[inst_.isls[e].a].push_back({inst_.isls[e].b, e});
    adj_[inst_.isls[e].b].push_back({inst_.isls[e].a, e});
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

double PathSolver::lens_coef(const Column& c, SatelliteId v) const {
  double s = 0.0;
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    if (c.seq[i] == v || c.seq[i + 1] == v) s += c.phi[i];
  }
  return s / inst_.alpha;
}

void PathSolver::merge(std::size_t a, std::size_t b) {
  const std::size_t ra = sets_.find(a);
  const std::size_t rb = sets_.find(b);
  if (ra == rb) return;
  dirty_.erase(ra);
  dirty_.erase(rb);
  sets_.unite(ra, rb);
  dirty_.insert(sets_.find(a));
}

void PathSolver::add_column(Column c) {
  const std::size_t k = c.item;
  column_index_[{k, c.seq}] = columns_.size();
  item_columns_[k].push_back(columns_.size());
  // Keep existing lens rows complete: join their blocks.
  for (std::size_t t : item_instants_[k]) {
    for (SatelliteId v : c.seq) {
      auto it = lens_row_owner_.find({v, t});
      if (it != lens_row_owner_.end()) merge(k, it->second);
    }
  }
  columns_.push_back(std::move(c));
  dirty_.insert(sets_.find(k));
}

void PathSolver::add_edge_row(const EdgeRow& row) {
  if (!edge_rows_.insert(row).second) return;
  for (std::size_t j : item_columns_[row.first]) {
    Column& c = columns_[j];
    if (!c.edges.empty() && c.edges.front() == row.second) c.bounded = false;
  }
  dirty_.insert(sets_.find(row.first));
}

void PathSolver::add_lens_row(const LensRow& row) {
  if (!lens_rows_.insert(row).second) return;
  std::size_t owner = static_cast<std::size_t>(-1);
  for (std::size_t k = 0; k < inst_.items.size(); ++k) {
    if (!usable_[k]) continue;
    if (!std::binary_search(item_instants_[k].begin(), item_instants_[k].end(), row.second)) continue;
    bool touches = false;
    for (std::size_t j : item_columns_[k]) {
      const auto& seq = columns_[j].seq;
      if (std::find(seq.begin(), seq.end(), row.first) != seq.end()) {
        touches = true;
        break;
      }
    }
    if (!touches) continue;
    if (owner == static_cast<std::size_t>(-1)) {
      owner = k;
    } else {
      merge(owner, k);
    }
  }
  if (owner == static_cast<std::size_t>(-1)) return;
  lens_row_owner_[row] = owner;
  dirty_.insert(sets_.find(owner));
}

void PathSolver::solve_block(std::size_t root) {
  std::vector<std::size_t> items;
  for (std::size_t k = 0; k < inst_.items.size(); ++k) {
    if (usable_[k] && sets_.find(k) == root) items.push_back(k);
  }
  lp::Model m;
  std::vector<std::size_t> cols;
  std::map<std::size_t, std::size_t> var_of;
  for (std::size_t k : items) {
    for (std::size_t j : item_columns_[k]) {
      const Column& c = columns_[j];
      var_of[j] = m.add_variable("h" + std::to_string(j), 0.0, c.bounded ? inst_.alpha : lp::kInf,
                                 inst_.items[k].weight * c.gain);
      cols.push_back(j);
    }
  }
  std::vector<EdgeRow> erows;
  std::vector<LensRow> lrows;
  for (std::size_t k : items) {
    for (auto it = edge_rows_.lower_bound({k, 0}); it != edge_rows_.end() && it->first == k; ++it) {
      std::vector<lp::Term> terms;
      for (std::size_t j : item_columns_[k]) {
        const Column& c = columns_[j];
        for (std::size_t i = 0; i < c.edges.size(); ++i) {
          if (c.edges[i] == it->second) terms.push_back({var_of[j], c.phi[i]});
        }
      }
      m.add_constraint("e", std::move(terms), lp::Relation::kLessEqual, inst_.alpha);
      erows.push_back(*it);
    }
  }
  for (const auto& [row, owner] : lens_row_owner_) {
    if (sets_.find(owner) != root) continue;
    std::vector<lp::Term> terms;
    for (std::size_t k : items) {
      if (!std::binary_search(item_instants_[k].begin(), item_instants_[k].end(), row.second)) continue;
      for (std::size_t j : item_columns_[k]) {
        const double a = lens_coef(columns_[j], row.first);
        if (a != 0.0) terms.push_back({var_of[j], a});
      }
    }
    m.add_constraint("l", std::move(terms), lp::Relation::kLessEqual,
                     static_cast<double>(inst_.satellites[row.first].lens_capacity));
    lrows.push_back(row);
  }
  const lp::Solution sol = lp::solve(m);
  if (sol.status != lp::Status::kOptimal) {
    throw std::runtime_error(std::string("lightpath master problem: ") + lp::to_string(sol.status));
  }
  for (std::size_t j : cols) columns_[j].value = sol.values[var_of[j]];
  for (std::size_t r = 0; r < erows.size(); ++r) edge_dual_[erows[r]] = std::max(0.0, sol.duals[r]);
  for (std::size_t r = 0; r < lrows.size(); ++r) {
    lens_dual_[lrows[r]] = std::max(0.0, sol.duals[erows.size() + r]);
  }
  stats_.largest_block_rows = std::max(stats_.largest_block_rows, m.num_constraints());
  for (std::size_t k : items) stale_.insert(k);
}

bool PathSolver::add_violated_rows() {
  const double tol = opt_.tolerance;
  std::map<EdgeRow, double> edge_flow;
  std::map<LensRow, double> load;
  for (const Column& c : columns_) {
    if (c.value <= 0.0) continue;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      edge_flow[{c.item, c.edges[i]}] += c.phi[i] * c.value;
      for (std::size_t t : item_instants_[c.item]) {
        load[{c.seq[i], t}] += c.phi[i] * c.value / inst_.alpha;
        load[{c.seq[i + 1], t}] += c.phi[i] * c.value / inst_.alpha;
      }
    }
  }
  bool added = false;
  for (const auto& [row, f] : edge_flow) {
    if (f > inst_.alpha * (1.0 + tol) && !edge_rows_.count(row)) {
      add_edge_row(row);
      added = true;
    }
  }
  for (const auto& [row, l] : load) {
    const double cap = inst_.satellites[row.first].lens_capacity;
    if (l > cap + tol * std::max(1.0, cap) && !lens_rows_.count(row)) {
      add_lens_row(row);
      added = true;
    }
  }
  return added;
}

bool PathSolver::price_item(std::size_t k) {
  const Item& item = inst_.items[k];
  const std::size_t n = inst_.satellites.size();
  auto edge_cost = [&](std::size_t e) {
    double c = 0.0;
    auto it = edge_dual_.find({k, e});
    if (it != edge_dual_.end() && edge_rows_.count({k, e})) c += it->second;
    for (std::size_t t : item_instants_[k]) {
      for (SatelliteId v : {inst_.isls[e].a, inst_.isls[e].b}) {
        auto lt = lens_dual_.find({v, t});
        if (lt != lens_dual_.end() && lens_row_owner_.count({v, t}) &&
            sets_.find(lens_row_owner_.at({v, t})) == sets_.find(k)) {
          c += lt->second / inst_.alpha;
        }
      }
    }
    return c;
  };
  std::vector<double> cost(inst_.isls.size());
  for (std::size_t e = 0; e < cost.size(); ++e) cost[e] = edge_cost(e);

  std::vector<bool> is_dest(n, false);
  for (SatelliteId d : dests_[k]) is_dest[d] = true;
  std::vector<double> w(n, kNegInf);
  std::vector<SatelliteId> succ(n, n);
  auto onward = [&](SatelliteId u) {
    const double stop = is_dest[u] ? item.weight : kNegInf;
    return std::max(stop, w[u]);
  };
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (SatelliteId v = 0; v < n; ++v) {
      for (const auto& [u, e] : adj_[v]) {
        const double o = onward(u);
        if (o == kNegInf) continue;
        const double cand = -cost[e] + inst_.satellites[u].lens_success * o;
        if (cand > w[v] + 1e-15 * std::max(1.0, std::fabs(cand))) {
          w[v] = cand;
          succ[v] = u;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  bool added = false;
  const double threshold = opt_.tolerance * std::max(1.0, item.weight);
  std::vector<SatelliteId> sources = item.sources;
  std::sort(sources.begin(), sources.end());
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  for (SatelliteId s : sources) {
    if (!(w[s] > threshold)) continue;
    Column c;
    c.item = k;
    c.seq.push_back(s);
    std::set<SatelliteId> on_path{s};
    SatelliteId cur = s;
    bool ok = true;
    while (true) {
      const SatelliteId nxt = succ[cur];
      if (nxt >= n || on_path.count(nxt)) {
        ok = false;
        break;
      }
      c.seq.push_back(nxt);
      on_path.insert(nxt);
      if (is_dest[nxt] && item.weight >= w[nxt]) break;
      cur = nxt;
    }
    if (!ok) continue;
    double phi = 1.0;
    for (std::size_t i = 0; i + 1 < c.seq.size(); ++i) {
      if (i > 0) phi *= inst_.satellites[c.seq[i]].lens_success;
      const auto& nb = adj_[c.seq[i]];
      const auto hop = std::lower_bound(nb.begin(), nb.end(),
                                        std::make_pair(c.seq[i + 1], std::size_t{0}));
      c.edges.push_back(hop->second);
      c.phi.push_back(phi);
    }
    c.gain = path_gain(inst_, c.seq);
    auto existing = column_index_.find({k, c.seq});
    if (existing == column_index_.end()) {
      add_column(std::move(c));
      added = true;
      continue;
    }
    // An existing column can only price out while held at its bound: make
    // the first-edge row explicit so its dual is priced.
    const Column& old = columns_[existing->second];
    if (old.bounded) {
      add_edge_row({k, old.edges.front()});
      added = true;
    }
  }
  return added;
}

FlowSolution PathSolver::run(PathSolverStats* stats) {
  prepare();
  const std::size_t n = inst_.items.size();
  FlowSolution out;
  out.flows.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!usable_[k]) {
      out.skipped_items.push_back(k);
      continue;
    }
    stale_.insert(k);
  }
  int rounds = 0;
  while (true) {
    if (++rounds > opt_.max_rounds) {
      throw std::runtime_error("lightpath column generation did not converge");
    }
    // Price with the current duals; blocks start empty with zero duals.
    bool changed = false;
    const std::set<std::size_t> to_price = std::move(stale_);
    stale_.clear();
    for (std::size_t k : to_price) changed = price_item(k) || changed;
    while (!dirty_.empty()) {
      const std::set<std::size_t> roots = std::move(dirty_);
      dirty_.clear();
      std::set<std::size_t> done;
      for (std::size_t r : roots) {
        const std::size_t root = sets_.find(r);
        if (done.insert(root).second) solve_block(root);
      }
      // Merges during solving are impossible; new dirt comes from rows.
      if (add_violated_rows()) changed = true;
    }
    if (!changed && stale_.empty()) break;
  }
  // Final feasibility certificate against every row, present or not.
  std::map<EdgeRow, double> edge_flow;
  std::map<LensRow, double> load;
  for (const Column& c : columns_) {
    if (c.value <= 0.0) continue;
    ItemFlow& f = out.flows[c.item];
    f.supply[c.seq.front()] += c.value;
    f.sink[c.seq.back()] += c.value * c.gain;
    f.eta += c.value * c.gain;
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      f.flow[{c.seq[i], c.seq[i + 1]}] += c.phi[i] * c.value;
      edge_flow[{c.item, c.edges[i]}] += c.phi[i] * c.value;
      for (std::size_t t : item_instants_[c.item]) {
        load[{c.seq[i], t}] += c.phi[i] * c.value / inst_.alpha;
        load[{c.seq[i + 1], t}] += c.phi[i] * c.value / inst_.alpha;
      }
    }
  }
  for (const auto& [row, f] : edge_flow) {
    if (f > inst_.alpha + 1e-7) throw std::runtime_error("column generation left an edge row violated");
  }
  for (const auto& [row, l] : load) {
    if (l > inst_.satellites[row.first].lens_capacity + 1e-7) {
      throw std::runtime_error("column generation left a lens row violated");
    }
  }
  for (std::size_t k = 0; k < n; ++k) out.objective += inst_.items[k].weight * out.flows[k].eta;

  std::set<std::size_t> roots;
  for (std::size_t k = 0; k < n; ++k) {
    if (usable_[k]) roots.insert(sets_.find(k));
  }
  stats_.rounds = rounds;
  stats_.columns = columns_.size();
  stats_.rows = edge_rows_.size() + lens_rows_.size();
  stats_.blocks = roots.size();
  if (stats) *stats = stats_;
  return out;
}

}  // namespace

FlowSolution solve_relaxation_paths(const LppInstance& instance, const PathSolverOptions& options,
                                    PathSolverStats* stats) {
  PathSolver solver(instance, options);
  return solver.run(stats);
}

}  // namespace qsatnet::lpp
