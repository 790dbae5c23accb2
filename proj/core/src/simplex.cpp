#include "simplex.hpp"

#include <vector>

#include "bmslice/errors.hpp"

namespace bmslice::detail {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-9;
constexpr long kMaxPivots = 200000;

// Tableau rows 0..m-1: [body | rhs]; row m: reduced costs | -objective.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;
  int m, n;

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int r = 0; r <= m; ++r) {
      if (r == row) continue;
      double f = t(r, col);
      if (f != 0.0) t.row(r) -= f * t.row(row);
    }
    basis[row] = col;
  }

  // Bland's rule; returns false at optimality.
  bool step() {
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (t(m, j) < -kCostTol) {
        col = j;
        break;
      }
    }
    if (col < 0) return false;
    int row = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < m; ++r) {
      if (t(r, col) > kPivotTol) {
        double ratio = t(r, n) / t(r, col);
        if (row < 0 || ratio < best_ratio - kPivotTol ||
            (ratio < best_ratio + kPivotTol && basis[r] < basis[row])) {
          row = r;
          best_ratio = ratio;
        }
      }
    }
    if (row < 0) throw Error("simplex: unbounded objective");
    pivot(row, col);
    return true;
  }
};

}  // namespace

LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c) {
  const int m = static_cast<int>(a.rows());
  const int nvars = static_cast<int>(a.cols());

  // Phase 1 tableau with one artificial per row, rhs made nonnegative.
  Tableau tab;
  tab.m = m;
  tab.n = nvars + m;
  tab.t = Eigen::MatrixXd::Zero(m + 1, tab.n + 1);
  for (int r = 0; r < m; ++r) {
    double s = b[r] < 0 ? -1.0 : 1.0;
    tab.t.block(r, 0, 1, nvars) = s * a.row(r);
    tab.t(r, nvars + r) = 1.0;
    tab.t(r, tab.n) = s * b[r];
  }
  tab.basis.resize(m);
  for (int r = 0; r < m; ++r) tab.basis[r] = nvars + r;
  // Phase-1 cost: sum of artificials, expressed over the current basis.
  for (int j = 0; j <= tab.n; ++j) {
    double col_sum = 0.0;
    for (int r = 0; r < m; ++r) col_sum += tab.t(r, j);
    tab.t(m, j) = (j >= nvars && j < tab.n) ? 1.0 - col_sum : -col_sum;
  }

  long pivots = 0;
  while (tab.step()) {
    if (++pivots > kMaxPivots) throw Error("simplex: pivot limit exceeded (phase 1)");
  }
  double phase1 = -tab.t(m, tab.n);
  if (phase1 > 1e-7) return {false, 0.0};

  // Drive remaining artificials out of the basis where possible.
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] >= nvars) {
      int col = -1;
      for (int j = 0; j < nvars; ++j) {
        if (std::abs(tab.t(r, j)) > kPivotTol) {
          col = j;
          break;
        }
      }
      if (col >= 0) tab.pivot(r, col);
      // else: redundant row, artificial stays at zero level; harmless.
    }
  }

  // Phase 2: real costs over the same tableau, artificial columns frozen.
  for (int j = 0; j < nvars; ++j) {
    double red = c[j];
    for (int r = 0; r < m; ++r) {
      if (tab.basis[r] < nvars) red -= c[tab.basis[r]] * tab.t(r, j);
    }
    tab.t(m, j) = red;
  }
  for (int j = nvars; j < tab.n; ++j) tab.t(m, j) = 1e30;  // never re-enter
  double obj = 0.0;
  for (int r = 0; r < m; ++r) {
    if (tab.basis[r] < nvars) obj += c[tab.basis[r]] * tab.t(r, tab.n);
  }
  tab.t(m, tab.n) = -obj;

  while (tab.step()) {
    if (++pivots > kMaxPivots) throw Error("simplex: pivot limit exceeded (phase 2)");
  }
  return {true, -tab.t(m, tab.n)};
}

LpResult atomic_norm_lp(const std::vector<Eigen::VectorXd>& gens, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  const int k = static_cast<int>(gens.size());
  Eigen::MatrixXd a(n, 2 * k);
  for (int j = 0; j < k; ++j) {
    a.col(j) = gens[j];
    a.col(k + j) = -gens[j];
  }
  return solve_standard_lp(a, x, Eigen::VectorXd::Ones(2 * k));
}

}  // namespace bmslice::detail
