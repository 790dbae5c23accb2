#pragma once

#include <Eigen/Dense>

#include "bmslice/errors.hpp"

namespace bmslice {

inline constexpr double kSingularTol = 1e-12;
inline constexpr double kSymTol = 1e-10;

/// Eigenvalue floor used when inverting or taking roots of nominally
/// positive-definite matrices.
inline constexpr double kEigFloor = 1e-12;

inline bool is_symmetric(const Eigen::MatrixXd& m, double tol = kSymTol) {
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

inline double min_eigenvalue_sym(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace detail {

template <typename Fn>
Eigen::MatrixXd sym_eig_apply(const Eigen::MatrixXd& m, Fn&& fn) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw SingularMatrix("eigendecomposition failed");
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = fn(std::max(ev[i], kEigFloor));
  Eigen::MatrixXd r = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (r + r.transpose());
}

}  // namespace detail

/// Symmetric square root with eigenvalue floor.
inline Eigen::MatrixXd sym_sqrt(const Eigen::MatrixXd& m) {
  return detail::sym_eig_apply(m, [](double x) { return std::sqrt(x); });
}

/// Inverse symmetric square root with eigenvalue floor.
inline Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& m) {
  return detail::sym_eig_apply(m, [](double x) { return 1.0 / std::sqrt(x); });
}

/// Symmetric inverse with eigenvalue floor.
inline Eigen::MatrixXd sym_inverse(const Eigen::MatrixXd& m) {
  return detail::sym_eig_apply(m, [](double x) { return 1.0 / x; });
}

}  // namespace bmslice
