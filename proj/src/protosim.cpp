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

#include "qsatnet/protosim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace qsatnet::protosim {
namespace {

long binomial(SplitMix64& rng, long trials, double p) {
  if (trials <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<long> dist(trials, p);
  return dist(rng);
}

// Largest-remainder split of `total` proportional to `weights`; ties go to
// the lower index.
std::vector<long> apportion(long total, const std::vector<double>& weights) {
  std::vector<long> out(weights.size(), 0);
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (total <= 0 || sum <= 0.0) return out;
  std::vector<std::pair<double, std::size_t>> rem;
  long assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double share = static_cast<double>(total) * weights[i] / sum;
    out[i] = static_cast<long>(std::floor(share));
    assigned += out[i];
    rem.push_back({share - static_cast<double>(out[i]), i});
  }
  std::stable_sort(rem.begin(), rem.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t j = 0; assigned < total && j < rem.size(); ++j, ++assigned) {
    ++out[rem[j].second];
  }
  return out;
}

}  // namespace

std::uint64_t fiber_stream_key(StationPair pair) {
  return mix64((static_cast<std::uint64_t>(pair.a) << 32) | pair.b);
}

std::uint64_t lightpath_stream_key(StationPair pair, std::size_t ordinal) {
  return mix64(fiber_stream_key(pair) ^ (0x1000000ULL + ordinal));
}

std::uint64_t swap_stream_key(const edt::SwapTriple& t) {
  return mix64((static_cast<std::uint64_t>(t.k) << 42) ^ (static_cast<std::uint64_t>(t.m) << 21) ^
             t.n ^ 0x5a5a5a5a00000000ULL);
}

long EbitInventory::count(StationPair pair) const {
  auto it = store_.find(pair);
  if (it == store_.end()) return 0;
  long n = 0;
  for (const Batch& b : it->second) n += b.ebits;
  return n;
}

void EbitInventory::add(StationPair pair, long ebits, long slot) {
  if (ebits < 0) throw std::invalid_argument("negative ebit count");
  if (ebits == 0) return;
  auto& q = store_[pair];
  if (!q.empty() && q.back().slot == slot) {
    q.back().ebits += ebits;
  } else {
    q.push_back({slot, ebits});
  }
}

long EbitInventory::take(StationPair pair, long ebits) {
  auto it = store_.find(pair);
  if (it == store_.end() || ebits <= 0) return 0;
  long taken = 0;
  auto& q = it->second;
  while (taken < ebits && !q.empty()) {
    const long t = std::min(ebits - taken, q.front().ebits);
    q.front().ebits -= t;
    taken += t;
    if (q.front().ebits == 0) q.pop_front();
  }
  return taken;
}

long EbitInventory::expire(long oldest_slot) {
  long dropped = 0;
  for (auto& [pair, q] : store_) {
    while (!q.empty() && q.front().slot < oldest_slot) {
      dropped += q.front().ebits;
      q.pop_front();
    }
  }
  return dropped;
}

std::map<StationPair, long> EbitInventory::counts() const {
  std::map<StationPair, long> out;
  for (const auto& [pair, q] : store_) {
    long n = 0;
    for (const Batch& b : q) n += b.ebits;
    if (n > 0) out[pair] = n;
  }
  return out;
}

SimState::SimState(std::uint64_t seed, SimOptions options) : seed_(seed), options_(options) {}

void SimState::set_plan(const AugmentedGraph& graph, const edt::EdtPlan& plan,
                        const std::vector<Commodity>& commodities) {
  if (plan.zeta.size() != commodities.size()) {
    throw std::invalid_argument("plan and commodity list disagree in size");
  }
  generation_.clear();
  std::map<StationPair, double> carries;
  for (const auto& [pair, g] : plan.generation) {
    if (g <= 0.0) continue;
    PairGen pg{pair, graph.total_capacity(pair) * g, {}};
    std::size_t ordinal = 0;
    for (std::size_t e : graph.edges_between(pair)) {
      const AugmentedEdge& edge = graph.edges()[e];
      const std::uint64_t key = edge.kind == EdgeKind::kFiber
                                    ? fiber_stream_key(pair)
                                    : lightpath_stream_key(pair, ordinal++);
      pg.edges.push_back({pair, edge.capacity, edge.success, key});
    }
    generation_.push_back(std::move(pg));
    if (gen_carry_.count(pair)) carries[pair] = gen_carry_[pair];
  }
  gen_carry_ = std::move(carries);

  // Level of a pair: 0 when generated directly, else one more than the
  // deepest input of a swap producing it. Bounded relaxation guards cycles.
  std::map<StationPair, int> level;
  for (const auto& s : plan.swaps) {
    level[{s.at.m, s.at.n}];
    level[StationPair::make(s.at.m, s.at.k)];
    level[StationPair::make(s.at.k, s.at.n)];
  }
  for (std::size_t round = 0; round <= plan.swaps.size(); ++round) {
    bool changed = false;
    for (const auto& s : plan.swaps) {
      const int in = std::max(level[StationPair::make(s.at.m, s.at.k)],
                              level[StationPair::make(s.at.k, s.at.n)]);
      int& out = level[{s.at.m, s.at.n}];
      if (out < in + 1 && in + 1 <= static_cast<int>(plan.swaps.size())) {
        out = in + 1;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::map<std::uint64_t, double> swap_carries;
  swaps_.clear();
  for (const auto& s : plan.swaps) {
    if (s.rate <= 0.0) continue;
    swaps_.push_back({s.at, s.rate, graph.stations().at(s.at.k).swap_success});
    const std::uint64_t key = swap_stream_key(s.at);
    if (swap_carry_.count(key)) swap_carries[key] = std::min(swap_carry_[key], 1.0);
  }
  swap_carry_ = std::move(swap_carries);
  std::stable_sort(swaps_.begin(), swaps_.end(), [&](const PlannedSwap& a, const PlannedSwap& b) {
    const int la = level[{a.at.m, a.at.n}];
    const int lb = level[{b.at.m, b.at.n}];
    if (la != lb) return la < lb;
    return std::tie(a.at.k, a.at.m, a.at.n) < std::tie(b.at.k, b.at.m, b.at.n);
  });
  commodities_ = commodities;
  zeta_ = plan.zeta;
  delivery_carry_.assign(commodities.size(), 0.0);
}

SlotTrace SimState::run_slot() {
  SlotTrace trace;
  trace.slot = slot_;
  trace.seed = seed_;
  trace.delivered.assign(commodities_.size(), 0);

  if (options_.max_age_slots >= 0) {
    const long oldest = slot_ - options_.max_age_slots;
    std::map<StationPair, long> before = inventory_.counts();
    inventory_.expire(oldest);
    std::map<StationPair, long> after = inventory_.counts();
    for (const auto& [pair, n] : before) {
      const long left = after.count(pair) ? after.at(pair) : 0;
      if (n > left) ledger_[pair].expired += n - left;
    }
  }

  // Phase 1: elementary generation.
  for (const PairGen& pg : generation_) {
    double& carry = gen_carry_[pg.pair];
    carry += pg.attempts_per_slot;
    const long attempts = static_cast<long>(std::floor(carry + 1e-9));
    carry = std::max(0.0, carry - static_cast<double>(attempts));
    std::vector<double> caps;
    for (const EdgeGen& e : pg.edges) caps.push_back(e.capacity);
    const std::vector<long> split = apportion(attempts, caps);
    long made = 0;
    for (std::size_t i = 0; i < pg.edges.size(); ++i) {
      SplitMix64 rng = substream(seed_, static_cast<std::uint64_t>(slot_), pg.edges[i].key);
      made += binomial(rng, split[i], pg.edges[i].success);
    }
    inventory_.add(pg.pair, made, slot_);
    ledger_[pg.pair].generated += made;
    trace.generated[pg.pair] += made;
  }

  // Phase 2: swaps, producers before consumers.
  for (const PlannedSwap& s : swaps_) {
    const StationPair left = StationPair::make(s.at.m, s.at.k);
    const StationPair right = StationPair::make(s.at.k, s.at.n);
    const StationPair out{s.at.m, s.at.n};
    const std::uint64_t key = swap_stream_key(s.at);
    double& carry = swap_carry_[key];
    carry += s.rate;
    const long want = static_cast<long>(std::floor(carry + 1e-9));
    const long attempts = std::min({want, inventory_.count(left), inventory_.count(right)});
    if (attempts <= 0) continue;
    carry = std::max(0.0, carry - static_cast<double>(attempts));
    inventory_.take(left, attempts);
    inventory_.take(right, attempts);
    ledger_[left].consumed += attempts;
    ledger_[right].consumed += attempts;
    trace.consumed[left] += attempts;
    trace.consumed[right] += attempts;
    SplitMix64 rng = substream(seed_, static_cast<std::uint64_t>(slot_), key);
    const long ok = binomial(rng, attempts, s.success);
    inventory_.add(out, ok, slot_);
    ledger_[out].produced += ok;
  }

  // Delivery: commodity pairs hand over what is left, shared by zeta when
  // several commodities name the same pair.
  std::map<StationPair, std::vector<std::size_t>> by_pair;
  for (std::size_t i = 0; i < commodities_.size(); ++i) by_pair[commodities_[i].pair()].push_back(i);
  for (const auto& [pair, members] : by_pair) {
    const long avail = inventory_.count(pair);
    if (avail == 0) continue;
    inventory_.take(pair, avail);
    ledger_[pair].delivered += avail;
    if (members.size() == 1) {
      trace.delivered[members.front()] += avail;
      continue;
    }
    std::vector<double> w;
    for (std::size_t i : members) w.push_back(zeta_[i] > 0.0 ? zeta_[i] : 1e-12);
    const std::vector<long> split = apportion(avail, w);
    for (std::size_t j = 0; j < members.size(); ++j) trace.delivered[members[j]] += split[j];
  }
  ++slot_;
  return trace;
}

SlotTrace run_slot(SimState& state) { return state.run_slot(); }

double average_throughput(const std::vector<SlotTrace>& traces, std::size_t commodity_count) {
  if (traces.empty()) throw std::invalid_argument("average_throughput: no traces");
  if (commodity_count == 0) return 0.0;
  double total = 0.0;
  for (const SlotTrace& t : traces) {
    for (long d : t.delivered) total += static_cast<double>(d);
  }
  return total / static_cast<double>(traces.size()) / static_cast<double>(commodity_count);
}

double satisfaction_ratio(const std::vector<SlotTrace>& traces, const std::vector<double>& demands) {
  if (traces.empty()) throw std::invalid_argument("satisfaction_ratio: no traces");
  if (demands.empty()) return 1.0;
  std::vector<double> sum(demands.size(), 0.0);
  for (const SlotTrace& t : traces) {
    for (std::size_t i = 0; i < demands.size() && i < t.delivered.size(); ++i) {
      sum[i] += static_cast<double>(t.delivered[i]);
    }
  }
  std::size_t met = 0;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const double rate = sum[i] / static_cast<double>(traces.size());
    if (demands[i] <= 0.0 || rate >= demands[i]) ++met;
  }
  return static_cast<double>(met) / static_cast<double>(demands.size());
}

}  // namespace qsatnet::protosim
