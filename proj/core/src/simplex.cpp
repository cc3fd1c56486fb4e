#include "wsynth/simplex.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wsynth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarStatus : unsigned char { kBasic, kAtLower, kAtUpper };

struct Tableau {
  const LpProblem* lp = nullptr;
  int m = 0;
  int n_total = 0;  // structural + artificial columns
  double tol = 1e-9;

  std::vector<std::vector<std::pair<int, double>>> art_cols;
  std::vector<double> art_lower, art_upper;

  std::vector<int> basis;          // column in basis row r
  std::vector<VarStatus> status;   // per column
  std::vector<double> x;           // per column
  Eigen::MatrixXd binv;            // dense basis inverse
  int pivots_since_refactor = 0;

  const std::vector<std::pair<int, double>>& column(int j) const {
    return j < lp->n_cols() ? lp->cols[static_cast<std::size_t>(j)]
                            : art_cols[static_cast<std::size_t>(j - lp->n_cols())];
  }
  double lower(int j) const {
    return j < lp->n_cols() ? lp->lower[static_cast<std::size_t>(j)]
                            : art_lower[static_cast<std::size_t>(j - lp->n_cols())];
  }
  double upper(int j) const {
    return j < lp->n_cols() ? lp->upper[static_cast<std::size_t>(j)]
                            : art_upper[static_cast<std::size_t>(j - lp->n_cols())];
  }

  // Rebuild binv and the basic values from scratch.
  bool refactorize() {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
    for (int r = 0; r < m; ++r) {
      for (const auto& [row, v] : column(basis[static_cast<std::size_t>(r)])) {
        B(row, r) = v;
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible()) return false;
    binv = lu.inverse();
    recompute_basic_values();
    pivots_since_refactor = 0;
    return true;
  }

  void recompute_basic_values() {
    Eigen::VectorXd rhs(m);
    for (int r = 0; r < m; ++r) rhs[r] = lp->b[static_cast<std::size_t>(r)];
    for (int j = 0; j < n_total; ++j) {
      if (status[static_cast<std::size_t>(j)] == VarStatus::kBasic) continue;
      const double v = x[static_cast<std::size_t>(j)];
      if (v == 0.0) continue;
      for (const auto& [row, coeff] : column(j)) rhs[row] -= coeff * v;
    }
    const Eigen::VectorXd xb = binv * rhs;
    for (int r = 0; r < m; ++r) x[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])] = xb[r];
  }

  Eigen::VectorXd ftran(int j) const {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    for (const auto& [row, v] : column(j)) w += v * binv.col(row);
    return w;
  }
};

struct PhaseResult {
  LpStatus status = LpStatus::kIterationLimit;
  int iterations = 0;
};

// Runs the simplex on the given cost vector until optimality.
PhaseResult run_phase(Tableau& t, const std::vector<double>& cost, int max_iter) {
  const int m = t.m;
  const double tol = t.tol;
  PhaseResult out;

  Eigen::VectorXd cb(m);
  int stall = 0;
  bool bland = false;

  for (int iter = 0; iter < max_iter; ++iter) {
    out.iterations = iter + 1;

    for (int r = 0; r < m; ++r) cb[r] = cost[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(r)])];
    const Eigen::VectorXd y = t.binv.transpose() * cb;

    // Pricing.
    int enter = -1;
    double best = tol;
    int sign = 0;  // +1 entering rises from lower, -1 drops from upper
    for (int j = 0; j < t.n_total; ++j) {
      const VarStatus st = t.status[static_cast<std::size_t>(j)];
      if (st == VarStatus::kBasic) continue;
      if (t.lower(j) == t.upper(j)) continue;  // fixed
      double d = cost[static_cast<std::size_t>(j)];
      for (const auto& [row, v] : t.column(j)) d -= y[row] * v;
      const bool free_var = !std::isfinite(t.lower(j)) && !std::isfinite(t.upper(j));
      const bool can_rise = st == VarStatus::kAtLower || free_var;
      const bool can_drop = st == VarStatus::kAtUpper || free_var;
      if (can_rise && d < -best) {
        best = bland ? best : -d;
        enter = j;
        sign = +1;
      } else if (can_drop && d > best) {
        best = bland ? best : d;
        enter = j;
        sign = -1;
      }
      if (bland && enter >= 0) break;  // first eligible index
    }
    if (enter < 0) {
      out.status = LpStatus::kOptimal;
      return out;
    }

    // Direction of basic values as x_enter moves by theta * sign.
    const Eigen::VectorXd w = t.ftran(enter);

    double theta = t.upper(enter) - t.lower(enter);  // bound-flip cap
    int leave_row = -1;
    double leave_bound = 0.0;
    for (int r = 0; r < m; ++r) {
      const double change = static_cast<double>(sign) * w[r];  // x_Br -= change * theta
      const int jb = t.basis[static_cast<std::size_t>(r)];
      const double xb = t.x[static_cast<std::size_t>(jb)];
      if (change > tol) {
        const double room = xb - t.lower(jb);
        const double cap = room / change;
        if (cap < theta - 1e-12 || (cap < theta + 1e-12 && leave_row >= 0 &&
                                    jb < t.basis[static_cast<std::size_t>(leave_row)])) {
          theta = std::max(cap, 0.0);
          leave_row = r;
          leave_bound = t.lower(jb);
        }
      } else if (change < -tol) {
        const double room = t.upper(jb) - xb;
        const double cap = room / (-change);
        if (cap < theta - 1e-12 || (cap < theta + 1e-12 && leave_row >= 0 &&
                                    jb < t.basis[static_cast<std::size_t>(leave_row)])) {
          theta = std::max(cap, 0.0);
          leave_row = r;
          leave_bound = t.upper(jb);
        }
      }
    }

    if (theta == kInf || !std::isfinite(theta)) {
      out.status = LpStatus::kUnbounded;
      return out;
    }

    // Anti-cycling: long runs of zero-length steps switch pricing to Bland.
    if (theta <= 1e-12) {
      if (++stall > 64) bland = true;
    } else {
      stall = 0;
      bland = false;
    }

    // Apply the step.
    if (theta > 0.0) {
      for (int r = 0; r < m; ++r) {
        const int jb = t.basis[static_cast<std::size_t>(r)];
        t.x[static_cast<std::size_t>(jb)] -= static_cast<double>(sign) * w[r] * theta;
      }
      t.x[static_cast<std::size_t>(enter)] += static_cast<double>(sign) * theta;
    }

    if (leave_row < 0) {
      // Pure bound flip, basis unchanged.
      t.status[static_cast<std::size_t>(enter)] =
          sign > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
      t.x[static_cast<std::size_t>(enter)] = sign > 0 ? t.upper(enter) : t.lower(enter);
      continue;
    }

    const int leave = t.basis[static_cast<std::size_t>(leave_row)];
    const double pivot = w[leave_row];
    if (std::fabs(pivot) < 1e-11) {
      // Numerically unsafe pivot; refactorize and retry.
      if (!t.refactorize()) {
        out.status = LpStatus::kIterationLimit;
        return out;
      }
      continue;
    }

    t.x[static_cast<std::size_t>(leave)] = leave_bound;
    t.status[static_cast<std::size_t>(leave)] =
        leave_bound == t.lower(leave) ? VarStatus::kAtLower : VarStatus::kAtUpper;
    t.status[static_cast<std::size_t>(enter)] = VarStatus::kBasic;
    t.basis[static_cast<std::size_t>(leave_row)] = enter;

    // Rank-1 update of the basis inverse.
    const Eigen::VectorXd pivot_row = t.binv.row(leave_row) / pivot;
    for (int r = 0; r < m; ++r) {
      if (r == leave_row) continue;
      const double f = w[r];
      if (f != 0.0) t.binv.row(r) -= f * pivot_row.transpose();
    }
    t.binv.row(leave_row) = pivot_row.transpose();

    if (++t.pivots_since_refactor >= 128) {
      if (!t.refactorize()) {
        out.status = LpStatus::kIterationLimit;
        return out;
      }
    }
  }
  return out;
}

}  // namespace

int LpProblem::add_column(double c, double lo, double hi,
                          std::vector<std::pair<int, double>> entries) {
  cols.push_back(std::move(entries));
  cost.push_back(c);
  lower.push_back(lo);
  upper.push_back(hi);
  return n_cols() - 1;
}

LpSolution solve_lp(const LpProblem& lp, const LpOptions& options) {
  const int m = lp.n_rows;
  const int n = lp.n_cols();
  LpSolution sol;
  if (static_cast<int>(lp.b.size()) != m || static_cast<int>(lp.cost.size()) != n ||
      static_cast<int>(lp.lower.size()) != n || static_cast<int>(lp.upper.size()) != n) {
    throw std::invalid_argument("solve_lp: inconsistent problem dimensions");
  }

  Tableau t;
  t.lp = &lp;
  t.m = m;
  t.n_total = n + m;  // artificials always appended; locked unless needed
  t.tol = options.tolerance;

  // Start structural variables at their bound closest to zero.
  t.x.assign(static_cast<std::size_t>(t.n_total), 0.0);
  t.status.assign(static_cast<std::size_t>(t.n_total), VarStatus::kAtLower);
  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower[static_cast<std::size_t>(j)];
    const double hi = lp.upper[static_cast<std::size_t>(j)];
    if (lo > hi) throw std::invalid_argument("solve_lp: lower bound above upper bound");
    double v;
    VarStatus st;
    if (std::isfinite(lo) && (lo >= 0.0 || !std::isfinite(hi))) {
      v = lo;
      st = VarStatus::kAtLower;
    } else if (std::isfinite(hi) && hi <= 0.0) {
      v = hi;
      st = VarStatus::kAtUpper;
    } else if (std::isfinite(lo)) {
      v = lo;
      st = VarStatus::kAtLower;
    } else {
      v = 0.0;  // free variable parked at zero
      st = VarStatus::kAtLower;
    }
    t.x[static_cast<std::size_t>(j)] = v;
    t.status[static_cast<std::size_t>(j)] = st;
  }

  // Residual of the structural start decides the artificial signs.
  std::vector<double> resid(lp.b);
  for (int j = 0; j < n; ++j) {
    const double v = t.x[static_cast<std::size_t>(j)];
    if (v == 0.0) continue;
    for (const auto& [row, coeff] : lp.cols[static_cast<std::size_t>(j)]) {
      resid[static_cast<std::size_t>(row)] -= coeff * v;
    }
  }
  t.art_cols.resize(static_cast<std::size_t>(m));
  t.art_lower.assign(static_cast<std::size_t>(m), 0.0);
  t.art_upper.assign(static_cast<std::size_t>(m), kInf);
  for (int r = 0; r < m; ++r) {
    const double s = resid[static_cast<std::size_t>(r)] >= 0.0 ? 1.0 : -1.0;
    t.art_cols[static_cast<std::size_t>(r)] = {{r, s}};
  }

  bool have_start = false;
  if (static_cast<int>(options.initial_basis.size()) == m) {
    t.basis = options.initial_basis;
    for (int j : t.basis) {
      if (j < 0 || j >= n) throw std::invalid_argument("solve_lp: bad initial basis column");
      t.status[static_cast<std::size_t>(j)] = VarStatus::kBasic;
    }
    if (t.refactorize()) {
      have_start = true;
      for (int r = 0; r < m && have_start; ++r) {
        const int jb = t.basis[static_cast<std::size_t>(r)];
        const double v = t.x[static_cast<std::size_t>(jb)];
        if (v < t.lower(jb) - 1e-7 || v > t.upper(jb) + 1e-7) have_start = false;
      }
    }
    if (!have_start) {
      for (int j : t.basis) t.status[static_cast<std::size_t>(j)] = VarStatus::kAtLower;
      for (int j = 0; j < n; ++j) {
        if (t.status[static_cast<std::size_t>(j)] != VarStatus::kBasic) {
          const double lo = lp.lower[static_cast<std::size_t>(j)];
          t.x[static_cast<std::size_t>(j)] = std::isfinite(lo) ? lo : 0.0;
        }
      }
    }
  }

  int total_iters = 0;
  if (!have_start) {
    // Phase 1 from the all-artificial basis.
    t.basis.resize(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
      const int aj = n + r;
      t.basis[static_cast<std::size_t>(r)] = aj;
      t.status[static_cast<std::size_t>(aj)] = VarStatus::kBasic;
      t.x[static_cast<std::size_t>(aj)] = std::fabs(resid[static_cast<std::size_t>(r)]);
    }
    if (!t.refactorize()) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }

    std::vector<double> phase1_cost(static_cast<std::size_t>(t.n_total), 0.0);
    for (int r = 0; r < m; ++r) phase1_cost[static_cast<std::size_t>(n + r)] = 1.0;
    const PhaseResult p1 = run_phase(t, phase1_cost, options.max_iterations);
    total_iters += p1.iterations;
    if (p1.status != LpStatus::kOptimal) {
      sol.status = p1.status == LpStatus::kUnbounded ? LpStatus::kInfeasible : p1.status;
      sol.iterations = total_iters;
      return sol;
    }
    double infeas = 0.0;
    for (int r = 0; r < m; ++r) infeas += t.x[static_cast<std::size_t>(n + r)];
    double scale = 1.0;
    for (int r = 0; r < m; ++r) scale = std::max(scale, std::fabs(lp.b[static_cast<std::size_t>(r)]));
    if (infeas > 1e-7 * scale) {
      sol.status = LpStatus::kInfeasible;
      sol.iterations = total_iters;
      return sol;
    }
  }

  // Lock artificials at zero for phase 2 (basic ones may stay, pinned).
  for (int r = 0; r < m; ++r) t.art_upper[static_cast<std::size_t>(r)] = 0.0;

  std::vector<double> phase2_cost(lp.cost);
  phase2_cost.resize(static_cast<std::size_t>(t.n_total), 0.0);
  const PhaseResult p2 = run_phase(t, phase2_cost, options.max_iterations - total_iters);
  total_iters += p2.iterations;

  sol.status = p2.status;
  sol.iterations = total_iters;
  sol.x.assign(t.x.begin(), t.x.begin() + n);
  if (p2.status == LpStatus::kOptimal) {
    // Clean tiny bound violations from accumulated arithmetic.
    for (int j = 0; j < n; ++j) {
      double& v = sol.x[static_cast<std::size_t>(j)];
      const double lo = lp.lower[static_cast<std::size_t>(j)];
      const double hi = lp.upper[static_cast<std::size_t>(j)];
      if (v < lo) v = lo;
      if (v > hi) v = hi;
    }
    double obj = 0.0;
    for (int j = 0; j < n; ++j) obj += lp.cost[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
    sol.objective = obj;
    double max_resid = 0.0;
    std::vector<double> ax(static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j < n; ++j) {
      const double v = sol.x[static_cast<std::size_t>(j)];
      if (v == 0.0) continue;
      for (const auto& [row, coeff] : lp.cols[static_cast<std::size_t>(j)]) {
        ax[static_cast<std::size_t>(row)] += coeff * v;
      }
    }
    for (int r = 0; r < m; ++r) {
      max_resid = std::max(max_resid, std::fabs(ax[static_cast<std::size_t>(r)] - lp.b[static_cast<std::size_t>(r)]));
    }
    sol.max_residual = max_resid;
  }
  return sol;
}

}  // namespace wsynth
