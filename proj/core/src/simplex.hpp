#pragma once

#include <Eigen/Dense>

namespace bmslice::detail {

struct LpResult {
  bool feasible = false;
  double value = 0.0;
};

/// Dense two-phase simplex with Bland's rule for
///   min c.x  s.t.  A x = b, x >= 0.
/// A is m x N with m small. Throws bmslice::Error on pivot-limit overrun.
LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c);

/// Gauge of conv{+-g_i} at x: min sum |lambda| over sum lambda_i g_i = x.
/// Equals by LP duality the support of {y : |<g_i,y>| <= 1} at x.
/// Returns infeasibility (generators do not span) via LpResult::feasible.
LpResult atomic_norm_lp(const std::vector<Eigen::VectorXd>& gens, const Eigen::VectorXd& x);

}  // namespace bmslice::detail
