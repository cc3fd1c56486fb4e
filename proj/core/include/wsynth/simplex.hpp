#pragma once

#include <utility>
#include <vector>

namespace wsynth {

// Linear program  min c'x  s.t.  A x = b,  lower <= x <= upper,
// with A stored column-sparse. Infinite bounds are allowed.
struct LpProblem {
  int n_rows = 0;
  std::vector<std::vector<std::pair<int, double>>> cols;  // (row, coeff)
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> b;

  int n_cols() const { return static_cast<int>(cols.size()); }

  // Returns the new column's index.
  int add_column(double c, double lo, double hi,
                 std::vector<std::pair<int, double>> entries);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;

  // max |A x - b| over rows; filled in after solving.
  double max_residual = 0.0;
};

struct LpOptions {
  int max_iterations = 500000;
  double tolerance = 1e-9;
  // Optional starting basis (one column index per row). Used when it is
  // nonsingular and the implied point is feasible; otherwise the solver
  // falls back to a phase-1 start.
  std::vector<int> initial_basis;
};

// Bounded-variable primal simplex (two-phase, dense basis inverse, Dantzig
// pricing with a Bland fallback against cycling).
LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

}  // namespace wsynth
