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

// Slotted Monte-Carlo execution of an EDT plan.
//
// Each slot runs two phases. Phase 1 turns the plan's generation ratios into
// integer attempt counts through per-pair carry accumulators, apportions them
// over parallel edges by capacity (largest remainder) and draws successes
// from Binomial(attempts, q_e). Phase 2 executes swaps in order of the level
// of the pair they produce; each swap has its own carry so the long-run
// attempt rate equals the plan's y, and attempts that find no inventory stay
// in the carry. Whatever remains on a commodity pair is then delivered.
//
// Randomness is counter based: every draw uses a generator seeded from
// (root seed, slot, stream key), so results do not depend on iteration
// order, and fiber edges are keyed by their station pair so that runs with
// and without lightpaths see the same fiber outcomes.

#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <vector>

#include "qsatnet/edt.hpp"
#include "qsatnet/netmodel.hpp"
#include "qsatnet/rng.hpp"

namespace qsatnet::protosim {

using qsatnet::SplitMix64;
using qsatnet::substream;

std::uint64_t fiber_stream_key(StationPair pair);
std::uint64_t lightpath_stream_key(StationPair pair, std::size_t ordinal);
std::uint64_t swap_stream_key(const edt::SwapTriple& triple);

class EbitInventory {
 public:
  long count(StationPair pair) const;
  void add(StationPair pair, long ebits, long slot);
  // Removes up to `ebits`, oldest first; returns the number removed.
  long take(StationPair pair, long ebits);
  // Discards ebits created before `oldest_slot`; returns the number dropped.
  long expire(long oldest_slot);
  std::map<StationPair, long> counts() const;

 private:
  struct Batch {
    long slot;
    long ebits;
  };
  std::map<StationPair, std::deque<Batch>> store_;
};

struct PairLedger {
  long generated = 0;
  long produced = 0;   // by successful swaps
  long consumed = 0;   // by swap attempts
  long delivered = 0;
  long expired = 0;
};

struct SlotTrace {
  long slot = 0;
  std::uint64_t seed = 0;
  std::vector<long> delivered;  // per commodity
  std::map<StationPair, long> generated;
  std::map<StationPair, long> consumed;
};

struct SimOptions {
  long max_age_slots = -1;  // negative: ebits never expire
};

// Inventory, carries and cumulative bookkeeping for one run.
class SimState {
 public:
  explicit SimState(std::uint64_t seed, SimOptions options = {});

  // Installs a new plan. Generation carries for pairs that keep generating
  // are kept; swap carries are clamped to at most one pending attempt.
  void set_plan(const AugmentedGraph& graph, const edt::EdtPlan& plan,
                const std::vector<Commodity>& commodities);

  SlotTrace run_slot();

  long slot() const { return slot_; }
  std::uint64_t seed() const { return seed_; }
  const EbitInventory& inventory() const { return inventory_; }
  const std::map<StationPair, PairLedger>& ledger() const { return ledger_; }

 private:
  struct EdgeGen {
    StationPair pair;
    double capacity;
    double success;
    std::uint64_t key;
  };
  struct PairGen {
    StationPair pair;
    double attempts_per_slot;
    std::vector<EdgeGen> edges;
  };
  struct PlannedSwap {
    edt::SwapTriple at;
    double rate;
    double success;
  };

  std::uint64_t seed_;
  SimOptions options_;
  long slot_ = 0;
  EbitInventory inventory_;
  std::map<StationPair, PairLedger> ledger_;
  std::vector<PairGen> generation_;
  std::vector<PlannedSwap> swaps_;  // level order
  std::vector<Commodity> commodities_;
  std::vector<double> zeta_;
  std::map<StationPair, double> gen_carry_;
  std::map<std::uint64_t, double> swap_carry_;
  std::vector<double> delivery_carry_;
};

// One slot of the protocol on `state` (which must hold a plan for `graph`).
SlotTrace run_slot(SimState& state);

// Mean over commodities of delivered ebits per slot. Throws
// std::invalid_argument when there are no traces.
double average_throughput(const std::vector<SlotTrace>& traces, std::size_t commodity_count);

// Fraction of commodities whose realized rate over the traces meets the
// per-slot demand; zero-demand commodities count as satisfied.
double satisfaction_ratio(const std::vector<SlotTrace>& traces, const std::vector<double>& demands);

}  // namespace qsatnet::protosim
