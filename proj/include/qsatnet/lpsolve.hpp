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

// Linear programs in bounded form and a self-contained revised simplex
// solver.
//
// The solver is a two-phase bounded-variable primal simplex with an explicit
// dense basis inverse stored column-major, so FTRAN and the eta update are
// runs of axpy over contiguous columns (see simd.hpp). Pricing is Dantzig's
// rule with a Harris two-pass ratio test; after a configurable streak of
// degenerate pivots it falls back to Bland's rule until progress resumes.
// Results are deterministic for a fixed model.

#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsatnet::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Sense { kMaximize, kMinimize };

struct Term {
  std::size_t var;
  double coef;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double objective = 0.0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Model {
 public:
  explicit Model(Sense sense = Sense::kMaximize) : sense_(sense) {}

  std::size_t add_variable(std::string name, double lower = 0.0, double upper = kInf,
                           double objective = 0.0);
  std::size_t add_constraint(std::string name, std::vector<Term> terms, Relation relation,
                             double rhs);
  void set_objective(std::size_t var, double coef);
  void set_bounds(std::size_t var, double lower, double upper);

  Sense sense() const { return sense_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  std::size_t num_nonzeros() const;

  // Throws ModelError on dangling variable references, inverted or NaN
  // bounds, or non-finite coefficients.
  void validate() const;

 private:
  Sense sense_;
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(Status status);

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;     // per variable
  std::vector<double> duals;      // per constraint, d(objective)/d(rhs)
  std::vector<double> activities; // per constraint, a_i . x
  long iterations = 0;
};

struct SolverOptions {
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  long max_iterations = 0;          // 0 -> automatic
  int degenerate_before_bland = 1000;
  int refactor_interval = 100;
};

// Solves the model. Optimal solutions are certified against the original
// rows (tolerance 1e-7) and bounds (1e-9) before being returned; a failed
// certificate raises std::runtime_error.
Solution solve(const Model& model, const SolverOptions& options = {});

// CPLEX LP text format, for cross-checking with external solvers.
std::string to_lp_format(const Model& model);

// Maximum row and bound violation of `values` against the model.
double max_violation(const Model& model, const std::vector<double>& values);

}  // namespace qsatnet::lp
