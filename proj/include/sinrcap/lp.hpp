// Copyright 2026 The sinrcap Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sinrcap/errors.hpp"

namespace sinrcap {

inline constexpr double kLpTolerance = 1e-7;

// maximize c.x  subject to  A x <= b,  0 <= x <= 1,
// with A >= 0, c >= 0 and b > 0, so x = 0 is always feasible.
struct LinearProgram {
  struct Term {
    std::size_t var;
    double coef;
  };
  struct Row {
    std::vector<Term> terms;
    double rhs = 1.0;
    std::string name;
  };

  std::size_t variables = 0;
  std::vector<double> objective;
  std::vector<Row> rows;

  explicit LinearProgram(std::size_t n = 0, double objective_coef = 1.0)
      : variables(n), objective(n, objective_coef) {}

  // Zero coefficients are dropped from the stored row.
  void add_row(std::vector<Term> terms, double rhs, std::string name = {}) {
    std::erase_if(terms, [](const Term& t) { return t.coef == 0.0; });
    rows.push_back({std::move(terms), rhs, std::move(name)});
  }

  void validate() const {
    if (objective.size() != variables)
      throw std::invalid_argument("objective size mismatch");
    for (double c : objective)
      if (!std::isfinite(c) || c < 0.0)
        throw std::invalid_argument("objective coefficients must be >= 0");
    for (const Row& row : rows) {
      if (!std::isfinite(row.rhs) || !(row.rhs > 0.0))
        throw std::invalid_argument("row rhs must be positive");
      for (const Term& t : row.terms) {
        if (t.var >= variables)
          throw std::invalid_argument("row references unknown variable");
        if (!std::isfinite(t.coef) || t.coef < 0.0)
          throw std::invalid_argument("row coefficients must be >= 0");
      }
    }
  }
};

struct FractionalSolution {
  std::vector<double> values;
  double objective = 0.0;
  // Objective of a dual feasible point; an upper bound on the optimum.
  double dual_bound = 0.0;
  std::size_t iterations = 0;
};

// Box bounds and every row, each within `tolerance`.
inline bool check_solution(const LinearProgram& lp,
                           std::span<const double> values,
                           double tolerance = kLpTolerance) {
  if (values.size() != lp.variables) return false;
  for (double x : values)
    if (!(x >= -tolerance && x <= 1.0 + tolerance)) return false;
  for (const auto& row : lp.rows) {
    double lhs = 0.0;
    for (const auto& t : row.terms) lhs += t.coef * values[t.var];
    if (lhs > row.rhs + tolerance) return false;
  }
  return true;
}

namespace detail {

// Dense-tableau primal simplex with implicit upper bounds on the
// structural variables. Slacks are unbounded above.
class BoundedSimplex {
 public:
  explicit BoundedSimplex(const LinearProgram& lp)
      : lp_(lp),
        n_(lp.variables),
        m_(lp.rows.size()),
        cols_(n_ + m_),
        tableau_(m_ * cols_, 0.0),
        xb_(m_),
        basis_(m_),
        at_upper_(cols_, false),
        reduced_(cols_, 0.0) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& t : lp.rows[i].terms) at(i, t.var) += t.coef;
      at(i, n_ + i) = 1.0;
      xb_[i] = lp.rows[i].rhs;
      basis_[i] = n_ + i;
    }
    for (std::size_t j = 0; j < n_; ++j) reduced_[j] = lp.objective[j];
  }

  FractionalSolution solve() {
    const std::size_t max_iterations = 200 * (cols_ + 10);
    std::size_t degenerate_run = 0;
    bool bland = false;
    std::size_t since_refresh = 0;
    for (;;) {
      if (iterations_ > max_iterations)
        throw NumericalFailure("simplex iteration limit reached");
      int dir = 0;
      const std::size_t q = choose_entering(bland, dir);
      if (q == kNone) {
        // Recompute reduced costs from the original data before declaring
        // optimality.
        refresh_reduced_costs();
        since_refresh = 0;
        if (choose_entering(bland, dir) == kNone) break;
        continue;
      }
      const double step = step_along(q, dir, bland);
      ++iterations_;
      if (step <= kDegenerateStep) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      if (++since_refresh >= 64) {
        refresh_reduced_costs();
        since_refresh = 0;
      }
    }
    return extract();
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  static constexpr double kCostTol = 1e-10;
  static constexpr double kPivotTol = 1e-10;
  static constexpr double kDegenerateStep = 1e-12;
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  double& at(std::size_t i, std::size_t j) { return tableau_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const {
    return tableau_[i * cols_ + j];
  }
  double upper(std::size_t j) const { return j < n_ ? 1.0 : kInf; }

  std::size_t choose_entering(bool bland, int& dir) const {
    std::vector<char> basic(cols_, 0);
    for (std::size_t b : basis_) basic[b] = 1;
    std::size_t best = kNone;
    double best_score = kCostTol;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (basic[j]) continue;
      double score = 0.0;
      int d = 0;
      if (!at_upper_[j] && reduced_[j] > kCostTol) {
        score = reduced_[j];
        d = 1;
      } else if (at_upper_[j] && reduced_[j] < -kCostTol) {
        score = -reduced_[j];
        d = -1;
      } else {
        continue;
      }
      if (bland) {
        dir = d;
        return j;
      }
      if (score > best_score) {
        best_score = score;
        best = j;
        dir = d;
      }
    }
    return best;
  }

  // Moves entering column q in direction dir as far as feasibility allows.
  double step_along(std::size_t q, int dir, bool bland) {
    double best_t = upper(q);
    std::size_t row = kNone;
    bool leaves_at_upper = false;
    double best_alpha = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double alpha = dir * at(i, q);
      double t;
      bool to_upper;
      if (alpha > kPivotTol) {
        t = std::max(0.0, xb_[i]) / alpha;
        to_upper = false;
      } else if (alpha < -kPivotTol && std::isfinite(upper(basis_[i]))) {
        t = std::max(0.0, upper(basis_[i]) - xb_[i]) / -alpha;
        to_upper = true;
      } else {
        continue;
      }
      bool take = t < best_t - 1e-12;
      if (!take && std::abs(t - best_t) <= 1e-12) {
        if (row == kNone)
          take = true;
        else if (bland)
          take = basis_[i] < basis_[row];
        else
          take = std::abs(alpha) > best_alpha;
      }
      if (take) {
        best_t = t;
        row = i;
        leaves_at_upper = to_upper;
        best_alpha = std::abs(alpha);
      }
    }
    if (!std::isfinite(best_t))
      throw NumericalFailure("simplex found an unbounded direction");

    for (std::size_t i = 0; i < m_; ++i) xb_[i] -= dir * best_t * at(i, q);

    if (row == kNone) {
      at_upper_[q] = !at_upper_[q];
      return best_t;
    }
    const double entering_value = (at_upper_[q] ? upper(q) : 0.0) + dir * best_t;
    const std::size_t leaving = basis_[row];
    at_upper_[leaving] = leaves_at_upper;
    at_upper_[q] = false;
    pivot(row, q);
    xb_[row] = entering_value;
    basis_[row] = q;
    return best_t;
  }

  void pivot(std::size_t r, std::size_t q) {
    const double inv = 1.0 / at(r, q);
    double* prow = &tableau_[r * cols_];
    for (std::size_t j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* irow = &tableau_[i * cols_];
      const double f = irow[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) irow[j] -= f * prow[j];
      irow[q] = 0.0;
    }
    const double f = reduced_[q];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= f * prow[j];
      reduced_[q] = 0.0;
    }
  }

  double cost(std::size_t j) const { return j < n_ ? lp_.objective[j] : 0.0; }

  // y = c_B B^{-1}, read off the slack columns of the tableau.
  std::vector<double> duals() const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost(basis_[r]);
      if (cb == 0.0) continue;
      for (std::size_t i = 0; i < m_; ++i) y[i] += cb * at(r, n_ + i);
    }
    return y;
  }

  void refresh_reduced_costs() {
    const std::vector<double> y = duals();
    for (std::size_t j = 0; j < n_; ++j) reduced_[j] = lp_.objective[j];
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& t : lp_.rows[i].terms) reduced_[t.var] -= y[i] * t.coef;
      reduced_[n_ + i] = -y[i];
    }
    for (std::size_t b : basis_) reduced_[b] = 0.0;
  }

  FractionalSolution extract() const {
    FractionalSolution sol;
    sol.iterations = iterations_;
    sol.values.assign(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j)
      if (at_upper_[j]) sol.values[j] = 1.0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) sol.values[basis_[i]] = xb_[i];
    for (double& x : sol.values) {
      if (x < 0.0 && x > -1e-9) x = 0.0;
      if (x > 1.0 && x < 1.0 + 1e-9) x = 1.0;
    }
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j)
      sol.objective += lp_.objective[j] * sol.values[j];

    std::vector<double> y = duals();
    for (double& v : y) v = std::max(0.0, v);
    std::vector<double> aty(n_, 0.0);
    double bound = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      bound += lp_.rows[i].rhs * y[i];
      for (const auto& t : lp_.rows[i].terms) aty[t.var] += t.coef * y[i];
    }
    for (std::size_t j = 0; j < n_; ++j)
      bound += std::max(0.0, lp_.objective[j] - aty[j]);
    sol.dual_bound = bound;
    return sol;
  }

  const LinearProgram& lp_;
  std::size_t n_;
  std::size_t m_;
  std::size_t cols_;
  std::vector<double> tableau_;
  std::vector<double> xb_;
  std::vector<std::size_t> basis_;
  std::vector<bool> at_upper_;
  std::vector<double> reduced_;
  std::size_t iterations_ = 0;
};

}  // namespace detail

// Optimal solution to 1e-7 on feasibility and on the duality gap; anything
// worse is reported as NumericalFailure instead of being returned.
inline FractionalSolution solve_lp(const LinearProgram& lp) {
  lp.validate();
  FractionalSolution sol = detail::BoundedSimplex(lp).solve();
  if (!check_solution(lp, sol.values))
    throw NumericalFailure("simplex solution violates a constraint");
  const double gap = sol.dual_bound - sol.objective;
  if (gap > kLpTolerance * std::max(1.0, std::abs(sol.objective)))
    throw NumericalFailure("simplex duality gap " + std::to_string(gap) +
                           " exceeds tolerance");
  return sol;
}

// CPLEX LP text format, for cross-checking with external solvers.
inline std::string to_lp_format(const LinearProgram& lp) {
  std::ostringstream os;
  os.precision(17);
  auto var = [](std::size_t j) { return "x" + std::to_string(j); };
  auto terms = [&](auto&& range) {
    bool first = true;
    for (const auto& [j, c] : range) {
      os << (first ? " " : " + ") << c << ' ' << var(j);
      first = false;
    }
    if (first) os << " 0 " << var(0);
  };
  os << "Maximize\n obj:";
  std::vector<std::pair<std::size_t, double>> obj;
  for (std::size_t j = 0; j < lp.variables; ++j)
    if (lp.objective[j] != 0.0) obj.emplace_back(j, lp.objective[j]);
  terms(obj);
  os << "\nSubject To\n";
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    os << ' ' << (row.name.empty() ? "r" + std::to_string(i) : row.name)
       << ':';
    std::vector<std::pair<std::size_t, double>> t;
    for (const auto& term : row.terms) t.emplace_back(term.var, term.coef);
    terms(t);
    os << " <= " << row.rhs << '\n';
  }
  os << "Bounds\n";
  for (std::size_t j = 0; j < lp.variables; ++j)
    os << " 0 <= " << var(j) << " <= 1\n";
  os << "End\n";
  return os.str();
}

}  // namespace sinrcap
