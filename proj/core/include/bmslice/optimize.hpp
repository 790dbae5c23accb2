#pragma once

#include <Eigen/Dense>
#include <functional>

namespace bmslice {

struct MaximizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evals = 0;
};

/// Derivative-free Nelder-Mead ascent from x0 with initial simplex scale
/// `step`. Deterministic for fixed inputs.
MaximizeResult nelder_mead_max(const std::function<double(const Eigen::VectorXd&)>& f,
                               const Eigen::VectorXd& x0, double step,
                               int max_iters = 200, double ftol = 1e-12);

struct Golden1dResult {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a maximum of f on [lo, hi].
Golden1dResult golden_section_max(const std::function<double(double)>& f, double lo,
                                  double hi, int iters = 80);

}  // namespace bmslice
