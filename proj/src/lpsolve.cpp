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

#include "qsatnet/lpsolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "qsatnet/simd.hpp"

namespace qsatnet::lp {

std::size_t Model::add_variable(std::string name, double lower, double upper, double objective) {
  variables_.push_back({std::move(name), lower, upper, objective});
  return variables_.size() - 1;
}

std::size_t Model::add_constraint(std::string name, std::vector<Term> terms, Relation relation,
                                  double rhs) {
  constraints_.push_back({std::move(name), std::move(terms), relation, rhs});
  return constraints_.size() - 1;
}

void Model::set_objective(std::size_t var, double coef) { variables_.at(var).objective = coef; }

void Model::set_bounds(std::size_t var, double lower, double upper) {
  variables_.at(var).lower = lower;
  variables_.at(var).upper = upper;
}

std::size_t Model::num_nonzeros() const {
  std::size_t nnz = 0;
  for (const Constraint& c : constraints_) nnz += c.terms.size();
  return nnz;
}

void Model::validate() const {
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    const Variable& v = variables_[j];
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw ModelError("variable '" + v.name + "': invalid bounds");
    }
    if (v.lower == kInf || v.upper == -kInf) {
      throw ModelError("variable '" + v.name + "': empty domain");
    }
    if (!std::isfinite(v.objective)) {
      throw ModelError("variable '" + v.name + "': non-finite objective coefficient");
    }
  }
  for (const Constraint& c : constraints_) {
    if (!std::isfinite(c.rhs)) throw ModelError("constraint '" + c.name + "': non-finite rhs");
    for (const Term& t : c.terms) {
      if (t.var >= variables_.size()) {
        throw ModelError("constraint '" + c.name + "': references undeclared variable " +
                         std::to_string(t.var));
      }
      if (!std::isfinite(t.coef)) {
        throw ModelError("constraint '" + c.name + "': non-finite coefficient");
      }
    }
  }
}

const char* to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

double max_violation(const Model& model, const std::vector<double>& values) {
  double worst = 0.0;
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    const Variable& v = model.variables()[j];
    worst = std::max({worst, v.lower - values[j], values[j] - v.upper});
  }
  for (const Constraint& c : model.constraints()) {
    double act = 0.0;
    for (const Term& t : c.terms) act += t.coef * values[t.var];
    switch (c.relation) {
      case Relation::kLessEqual: worst = std::max(worst, act - c.rhs); break;
      case Relation::kGreaterEqual: worst = std::max(worst, c.rhs - act); break;
      case Relation::kEqual: worst = std::max(worst, std::fabs(act - c.rhs)); break;
    }
  }
  return worst;
}

namespace {

enum class VarState : std::uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Gauss-Jordan inversion with partial pivoting. `a` is column-major m x m and
// is destroyed. Returns false when the matrix is numerically singular.
bool invert_dense(std::vector<double>& a, std::size_t m, std::vector<double>& inv) {
  inv.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) inv[i * m + i] = 1.0;
  auto at = [m](std::vector<double>& v, std::size_t r, std::size_t c) -> double& {
    return v[c * m + r];
  };
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    double best = std::fabs(at(a, col, col));
    for (std::size_t r = col + 1; r < m; ++r) {
      const double v = std::fabs(at(a, r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-12) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < m; ++c) {
        std::swap(at(a, piv, c), at(a, col, c));
        std::swap(at(inv, piv, c), at(inv, col, c));
      }
    }
    const double d = at(a, col, col);
    for (std::size_t c = 0; c < m; ++c) {
      at(a, col, c) /= d;
      at(inv, col, c) /= d;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = at(a, r, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < m; ++c) {
        at(a, r, c) -= f * at(a, col, c);
        at(inv, r, c) -= f * at(inv, col, c);
      }
    }
  }
  return true;
}

class SimplexEngine {
 public:
  SimplexEngine(const Model& model, const SolverOptions& options)
      : model_(model), opt_(options), kern_(simd::kernels()) {
    build();
  }

  Solution run();

 private:
  enum class PhaseResult { kOptimal, kUnbounded, kIterationLimit };

  void build();
  PhaseResult iterate();
  void refactor();
  void recompute_primal();
  void recompute_duals();
  double reduced_cost(std::size_t j) const;
  std::size_t price(bool bland, double& direction) const;
  void ftran(std::size_t j, std::vector<double>& w) const;
  bool eligible_bounds(std::size_t j) const { return upper_[j] > lower_[j]; }

  const Model& model_;
  SolverOptions opt_;
  const simd::Kernels& kern_;

  std::size_t m_ = 0;         // rows
  std::size_t n_struct_ = 0;  // structural columns
  std::size_t n_ = 0;         // all columns incl. slacks and artificials

  std::vector<std::size_t> col_start_;
  std::vector<std::size_t> row_index_;
  std::vector<double> value_;

  std::vector<double> lower_, upper_, cost_, phase2_cost_, b_;
  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<std::size_t> basis_;    // row -> column
  std::vector<std::size_t> position_; // column -> row or kNone
  std::vector<double> binv_;          // column-major m x m
  std::vector<double> pi_;
  std::vector<std::size_t> artificials_;

  long iterations_ = 0;
  long max_iterations_ = 0;
  int since_refactor_ = 0;
  int degenerate_streak_ = 0;
};

void SimplexEngine::build() {
  model_.validate();
  m_ = model_.num_constraints();
  n_struct_ = model_.num_variables();
  const double sign = model_.sense() == Sense::kMaximize ? 1.0 : -1.0;

  // Merge duplicate terms per row and transpose into CSC.
  std::vector<std::map<std::size_t, double>> rows(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    for (const Term& t : model_.constraints()[i].terms) rows[i][t.var] += t.coef;
  }
  std::vector<std::vector<std::pair<std::size_t, double>>> cols(n_struct_);
  for (std::size_t i = 0; i < m_; ++i) {
    for (const auto& [j, v] : rows[i]) {
      if (v != 0.0) cols[j].push_back({i, v});
    }
  }

  lower_.clear();
  upper_.clear();
  phase2_cost_.clear();
  for (std::size_t j = 0; j < n_struct_; ++j) {
    const Variable& v = model_.variables()[j];
    lower_.push_back(v.lower);
    upper_.push_back(v.upper);
    phase2_cost_.push_back(sign * v.objective);
  }
  b_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    const Constraint& c = model_.constraints()[i];
    b_[i] = c.rhs;
    cols.push_back({{i, 1.0}});
    switch (c.relation) {
      case Relation::kLessEqual: lower_.push_back(0.0); upper_.push_back(kInf); break;
      case Relation::kGreaterEqual: lower_.push_back(-kInf); upper_.push_back(0.0); break;
      case Relation::kEqual: lower_.push_back(0.0); upper_.push_back(0.0); break;
    }
    phase2_cost_.push_back(0.0);
  }

  // Nonbasic structurals start at a finite bound (or zero when free).
  x_.assign(n_struct_ + m_, 0.0);
  state_.assign(n_struct_ + m_, VarState::kAtLower);
  for (std::size_t j = 0; j < n_struct_; ++j) {
    if (std::isfinite(lower_[j])) {
      x_[j] = lower_[j];
      state_[j] = VarState::kAtLower;
    } else if (std::isfinite(upper_[j])) {
      x_[j] = upper_[j];
      state_[j] = VarState::kAtUpper;
    } else {
      x_[j] = 0.0;
      state_[j] = VarState::kFreeZero;
    }
  }
  std::vector<double> residual = b_;
  for (std::size_t j = 0; j < n_struct_; ++j) {
    if (x_[j] == 0.0) continue;
    for (const auto& [i, v] : cols[j]) residual[i] -= v * x_[j];
  }

  basis_.assign(m_, kNone);
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t s = n_struct_ + i;
    const double r = residual[i];
    if (r >= lower_[s] - opt_.primal_tolerance && r <= upper_[s] + opt_.primal_tolerance) {
      basis_[i] = s;
      x_[s] = r;
      state_[s] = VarState::kBasic;
      continue;
    }
    // Slack parks at its violated bound; an artificial absorbs the rest.
    const double parked = r < lower_[s] ? lower_[s] : upper_[s];
    x_[s] = parked;
    state_[s] = parked == lower_[s] ? VarState::kAtLower : VarState::kAtUpper;
    const double gap = r - parked;
    const std::size_t a = cols.size();
    cols.push_back({{i, gap > 0 ? 1.0 : -1.0}});
    lower_.push_back(0.0);
    upper_.push_back(kInf);
    phase2_cost_.push_back(0.0);
    x_.push_back(std::fabs(gap));
    state_.push_back(VarState::kBasic);
    basis_[i] = a;
    artificials_.push_back(a);
  }
  n_ = cols.size();

  col_start_.assign(n_ + 1, 0);
  for (std::size_t j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + cols[j].size();
  row_index_.resize(col_start_[n_]);
  value_.resize(col_start_[n_]);
  for (std::size_t j = 0; j < n_; ++j) {
    std::size_t k = col_start_[j];
    for (const auto& [i, v] : cols[j]) {
      row_index_[k] = i;
      value_[k] = v;
      ++k;
    }
  }
  position_.assign(n_, kNone);
  for (std::size_t i = 0; i < m_; ++i) position_[basis_[i]] = i;

  max_iterations_ = opt_.max_iterations > 0
                        ? opt_.max_iterations
                        : 50 * static_cast<long>(m_ + n_) + 10000;
}

void SimplexEngine::ftran(std::size_t j, std::vector<double>& w) const {
  w.assign(m_, 0.0);
  for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
    kern_.axpy(value_[k], &binv_[row_index_[k] * m_], w.data(), m_);
  }
}

void SimplexEngine::refactor() {
  std::vector<double> dense(m_ * m_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    const std::size_t j = basis_[r];
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      dense[r * m_ + row_index_[k]] = value_[k];
    }
  }
  if (!invert_dense(dense, m_, binv_)) {
    throw std::runtime_error("simplex: basis matrix became singular");
  }
  since_refactor_ = 0;
}

void SimplexEngine::recompute_primal() {
  std::vector<double> rhs = b_;
  for (std::size_t j = 0; j < n_; ++j) {
    if (state_[j] == VarState::kBasic || x_[j] == 0.0) continue;
    for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      rhs[row_index_[k]] -= value_[k] * x_[j];
    }
  }
  std::vector<double> xb(m_, 0.0);
  for (std::size_t k = 0; k < m_; ++k) {
    if (rhs[k] != 0.0) kern_.axpy(rhs[k], &binv_[k * m_], xb.data(), m_);
  }
  for (std::size_t r = 0; r < m_; ++r) x_[basis_[r]] = xb[r];
}

void SimplexEngine::recompute_duals() {
  std::vector<double> cb(m_);
  for (std::size_t r = 0; r < m_; ++r) cb[r] = cost_[basis_[r]];
  pi_.resize(m_);
  for (std::size_t k = 0; k < m_; ++k) pi_[k] = kern_.dot(cb.data(), &binv_[k * m_], m_);
}

double SimplexEngine::reduced_cost(std::size_t j) const {
  double d = cost_[j];
  for (std::size_t k = col_start_[j]; k < col_start_[j + 1]; ++k) {
    d -= pi_[row_index_[k]] * value_[k];
  }
  return d;
}

// Returns the entering column (kNone at optimality) and its direction.
std::size_t SimplexEngine::price(bool bland, double& direction) const {
  std::size_t best = kNone;
  double best_score = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    if (state_[j] == VarState::kBasic || !eligible_bounds(j)) continue;
    const double d = reduced_cost(j);
    double dir = 0.0;
    switch (state_[j]) {
      case VarState::kAtLower: if (d > opt_.dual_tolerance) dir = 1.0; break;
      case VarState::kAtUpper: if (d < -opt_.dual_tolerance) dir = -1.0; break;
      case VarState::kFreeZero:
        if (std::fabs(d) > opt_.dual_tolerance) dir = d > 0 ? 1.0 : -1.0;
        break;
      case VarState::kBasic: break;
    }
    if (dir == 0.0) continue;
    if (bland) {
      direction = dir;
      return j;
    }
    if (std::fabs(d) > best_score) {
      best_score = std::fabs(d);
      best = j;
      direction = dir;
    }
  }
  return best;
}

SimplexEngine::PhaseResult SimplexEngine::iterate() {
  refactor();
  recompute_primal();
  recompute_duals();
  std::vector<double> w;
  std::vector<double> rho(m_);
  bool verified = false;
  while (true) {
    if (iterations_ >= max_iterations_) return PhaseResult::kIterationLimit;
    if (since_refactor_ >= opt_.refactor_interval) {
      refactor();
      recompute_primal();
      recompute_duals();
    }
    const bool bland = degenerate_streak_ >= opt_.degenerate_before_bland;
    double dir = 0.0;
    const std::size_t q = price(bland, dir);
    if (q == kNone) {
      if (verified || since_refactor_ == 0) return PhaseResult::kOptimal;
      // Confirm optimality on a fresh factorization.
      refactor();
      recompute_primal();
      recompute_duals();
      verified = true;
      continue;
    }
    verified = false;
    ++iterations_;
    ftran(q, w);

    // Harris two-pass ratio test.
    const double tol = opt_.primal_tolerance;
    double relaxed_min = kInf;
    for (std::size_t r = 0; r < m_; ++r) {
      const double wr = w[r];
      if (std::fabs(wr) <= opt_.pivot_tolerance) continue;
      const std::size_t j = basis_[r];
      const double rate = -dir * wr;  // d x_j / d theta
      double limit = kInf;
      if (rate < 0 && std::isfinite(lower_[j])) limit = (x_[j] - lower_[j] + tol) / -rate;
      if (rate > 0 && std::isfinite(upper_[j])) limit = (upper_[j] - x_[j] + tol) / rate;
      relaxed_min = std::min(relaxed_min, limit);
    }
    std::size_t leave = kNone;
    double theta = kInf;
    double best_pivot = 0.0;
    if (std::isfinite(relaxed_min)) {
      for (std::size_t r = 0; r < m_; ++r) {
        const double wr = w[r];
        if (std::fabs(wr) <= opt_.pivot_tolerance) continue;
        const std::size_t j = basis_[r];
        const double rate = -dir * wr;
        double limit = kInf;
        if (rate < 0 && std::isfinite(lower_[j])) limit = (x_[j] - lower_[j]) / -rate;
        if (rate > 0 && std::isfinite(upper_[j])) limit = (upper_[j] - x_[j]) / rate;
        if (limit > relaxed_min) continue;
        const bool better = bland ? (leave == kNone || j < basis_[leave])
                                  : std::fabs(wr) > best_pivot;
        if (better) {
          leave = r;
          best_pivot = std::fabs(wr);
          theta = std::max(limit, 0.0);
        }
      }
    }
    const double flip = upper_[q] - lower_[q];
    if (leave == kNone && !std::isfinite(flip)) return PhaseResult::kUnbounded;

    if (flip <= theta) {
      // Bound flip: entering variable crosses to its opposite bound.
      theta = flip;
      for (std::size_t r = 0; r < m_; ++r) x_[basis_[r]] -= dir * theta * w[r];
      if (state_[q] == VarState::kAtLower) {
        state_[q] = VarState::kAtUpper;
        x_[q] = upper_[q];
      } else {
        state_[q] = VarState::kAtLower;
        x_[q] = lower_[q];
      }
      degenerate_streak_ = 0;
      continue;
    }

    degenerate_streak_ = theta < 1e-12 ? degenerate_streak_ + 1 : 0;
    const std::size_t out = basis_[leave];
    const double rate_out = -dir * w[leave];
    for (std::size_t r = 0; r < m_; ++r) x_[basis_[r]] -= dir * theta * w[r];
    x_[q] += dir * theta;
    if (rate_out < 0) {
      x_[out] = lower_[out];
      state_[out] = VarState::kAtLower;
    } else {
      x_[out] = upper_[out];
      state_[out] = VarState::kAtUpper;
    }

    // Dual update: pi += (d_q / w_r) * row_r(B^-1).
    const double dq = reduced_cost(q);
    const double wr = w[leave];
    for (std::size_t k = 0; k < m_; ++k) rho[k] = binv_[k * m_ + leave];
    kern_.axpy(dq / wr, rho.data(), pi_.data(), m_);

    // Eta update of the explicit inverse, one contiguous column at a time.
    for (std::size_t k = 0; k < m_; ++k) {
      double* col = &binv_[k * m_];
      const double t = col[leave] / wr;
      if (t != 0.0) {
        kern_.axpy(-t, w.data(), col, m_);
        col[leave] = t;
      }
    }
    basis_[leave] = q;
    position_[q] = leave;
    position_[out] = kNone;
    state_[q] = VarState::kBasic;
    ++since_refactor_;
  }
}

Solution SimplexEngine::run() {
  Solution sol;
  if (!artificials_.empty()) {
    cost_.assign(n_, 0.0);
    for (std::size_t a : artificials_) cost_[a] = -1.0;
    const PhaseResult r = iterate();
    if (r == PhaseResult::kIterationLimit) {
      sol.status = Status::kIterationLimit;
      sol.iterations = iterations_;
      return sol;
    }
    double infeasibility = 0.0;
    double scale = 1.0;
    for (std::size_t a : artificials_) infeasibility += x_[a];
    for (double v : b_) scale = std::max(scale, std::fabs(v));
    if (infeasibility > 1e-9 * scale) {
      sol.status = Status::kInfeasible;
      sol.iterations = iterations_;
      return sol;
    }
    for (std::size_t a : artificials_) {
      upper_[a] = 0.0;
      if (state_[a] != VarState::kBasic) {
        x_[a] = 0.0;
        state_[a] = VarState::kAtLower;
      }
    }
  }
  cost_ = phase2_cost_;
  const PhaseResult r = iterate();
  sol.iterations = iterations_;
  if (r == PhaseResult::kIterationLimit) {
    sol.status = Status::kIterationLimit;
    return sol;
  }
  if (r == PhaseResult::kUnbounded) {
    sol.status = Status::kUnbounded;
    return sol;
  }
  refactor();
  recompute_primal();
  recompute_duals();

  sol.status = Status::kOptimal;
  sol.values.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_struct_));
  for (std::size_t j = 0; j < n_struct_; ++j) {
    // Snap round-off against the declared bounds.
    const Variable& v = model_.variables()[j];
    if (sol.values[j] < v.lower && sol.values[j] > v.lower - 1e-7) sol.values[j] = v.lower;
    if (sol.values[j] > v.upper && sol.values[j] < v.upper + 1e-7) sol.values[j] = v.upper;
  }
  const double sign = model_.sense() == Sense::kMaximize ? 1.0 : -1.0;
  sol.duals.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) sol.duals[i] = sign * pi_[i];
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n_struct_; ++j) {
    sol.objective += model_.variables()[j].objective * sol.values[j];
  }
  sol.activities.assign(m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) {
    for (const Term& t : model_.constraints()[i].terms) {
      sol.activities[i] += t.coef * sol.values[t.var];
    }
  }
  double row_violation = 0.0;
  double bound_violation = 0.0;
  for (std::size_t j = 0; j < n_struct_; ++j) {
    const Variable& v = model_.variables()[j];
    bound_violation = std::max({bound_violation, v.lower - sol.values[j], sol.values[j] - v.upper});
  }
  for (std::size_t i = 0; i < m_; ++i) {
    const Constraint& c = model_.constraints()[i];
    const double a = sol.activities[i];
    switch (c.relation) {
      case Relation::kLessEqual: row_violation = std::max(row_violation, a - c.rhs); break;
      case Relation::kGreaterEqual: row_violation = std::max(row_violation, c.rhs - a); break;
      case Relation::kEqual: row_violation = std::max(row_violation, std::fabs(a - c.rhs)); break;
    }
  }
  if (row_violation > 1e-7 || bound_violation > 1e-9) {
    throw std::runtime_error("simplex: solution failed feasibility certificate (row " +
                             std::to_string(row_violation) + ", bound " +
                             std::to_string(bound_violation) + ")");
  }
  return sol;
}

}  // namespace

Solution solve(const Model& model, const SolverOptions& options) {
  SimplexEngine engine(model, options);
  return engine.run();
}

}  // namespace qsatnet::lp
