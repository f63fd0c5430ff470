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

// Independent reference computations shared by the unit tests and the
// acceptance gate. Nothing here calls the simplex solver.

#pragma once

#include <optional>
#include <vector>

#include "qsatnet/lpsolve.hpp"
#include "qsatnet/netmodel.hpp"

namespace oracles {

// Optimum of a model with finite variable bounds by enumerating every basic
// solution of the active-constraint systems. nullopt when infeasible.
std::optional<double> enumerate_vertices(const qsatnet::lp::Model& model);

// Lagrangian upper bound (for maximization) from multipliers `duals`, after
// projecting each onto the sign its row relation allows.
double dual_bound(const qsatnet::lp::Model& model, std::vector<double> duals);

// Optimum of the entanglement distribution LP (every station may swap,
// maximize the sum of commodity rates, optionally capped by the demand of
// `window`) by enumerating bases of its equality form. The program is
// written out here from the pair balance directly, not through edt.hpp.
// Only for a handful of stations.
double edt_basis_enumeration(const qsatnet::AugmentedGraph& graph,
                             const std::vector<qsatnet::Commodity>& commodities, bool capped,
                             int window = 0);

// Rate of a repeater chain when every swap runs at the bottleneck:
// product of interior swap probabilities times the smallest link rate.
double chain_bottleneck_rate(const std::vector<double>& interior_swap,
                             const std::vector<double>& link_rate);

}  // namespace oracles
