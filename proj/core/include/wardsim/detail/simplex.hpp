#pragma once

#include <vector>

namespace wardsim::detail {

// Minimal bounded-variable primal simplex, dense basis inverse. Purpose-built
// for the assignment-plus-knapsack polytopes this project solves: columns
// carry at most a handful of nonzeros, row counts stay in the low hundreds.

struct LpColumn {
  std::vector<int> rows;
  std::vector<double> coef;
};

enum class RowSense { eq, le };

struct LpProblem {
  std::vector<RowSense> sense;
  std::vector<double> rhs;
  std::vector<LpColumn> cols;
  std::vector<double> obj;    // minimized
  std::vector<double> lower;  // per structural column
  std::vector<double> upper;  // may be +inf

  int rows() const { return static_cast<int>(rhs.size()); }
  int structurals() const { return static_cast<int>(cols.size()); }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;  // structural values; a basic (vertex) solution
  int iterations = 0;
};

LpResult solve_lp(const LpProblem& p);

}  // namespace wardsim::detail
