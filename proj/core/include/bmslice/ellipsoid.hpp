#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bmslice/body.hpp"

namespace bmslice {

inline constexpr double kDefaultMveeEps = 1e-7;

/// Centered ellipsoid E = {x : x^T M x <= 1} with M symmetric positive
/// definite.
class Ellipsoid {
 public:
  explicit Ellipsoid(Eigen::MatrixXd m);

  static Ellipsoid unit_ball(int n);

  const Eigen::MatrixXd& M() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  /// Support function sqrt(u^T M^-1 u).
  double support(const Eigen::VectorXd& u) const;

  /// Polar ellipsoid E_{M^-1}.
  Ellipsoid polar() const;

 private:
  Eigen::MatrixXd m_;
};

struct MveeOptions {
  double eps = kDefaultMveeEps;  // in (0, 1e-2]
  long max_iters = 0;            // 0 = 100000 * n
  bool trace_objective = false;  // record log det Lambda per iteration
};

struct MveeReport {
  Ellipsoid ellipsoid;
  Eigen::VectorXd weights;  // nonnegative, sums to 1 over input points
  double epsilon = 0.0;     // achieved max_i kappa_i / n - 1
  long iterations = 0;
  std::vector<double> objective_trace;  // filled when trace_objective is set
};

/// Minimum-volume centered ellipsoid of the symmetric point set {+-x_i}.
/// Frank-Wolfe multiplicative-weights ascent on log det Lambda(p),
/// Lambda(p) = sum p_i x_i x_i^T, stepping toward the argmax of
/// kappa_i = x_i^T Lambda^-1 x_i with exact line-search step
/// (kappa/n - 1)/(kappa - 1), plus Wolfe-Atwood away/drop steps on the
/// support argmin for linear convergence. Stops when every kappa_i lies in
/// [n(1-eps), n(1+eps)]; the returned M is rescaled so all points satisfy
/// x^T M x <= 1.
MveeReport mvee_centered(const std::vector<Eigen::VectorXd>& points,
                         const MveeOptions& opt = {});

/// Minimal-volume ellipsoid containing A.
Ellipsoid lowner(const SymBody& a, double eps = kDefaultMveeEps);

/// Maximal-volume ellipsoid contained in A.
Ellipsoid john(const SymBody& a, double eps = kDefaultMveeEps);

struct ContainmentBounds {
  Ellipsoid inner;      // John ellipsoid of A
  double outer_factor;  // smallest sampled t with A inside t * inner-ball scale
};

/// John ellipsoid together with the smallest sampled t such that
/// A is contained in t times the John ellipsoid.
ContainmentBounds containment_bounds(const SymBody& a, double eps = kDefaultMveeEps);

}  // namespace bmslice
