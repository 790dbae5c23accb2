#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

namespace bmslice {

/// Deterministic quasi-uniform grid of m unit directions in R^n.
/// n=2: evenly spaced angles; n=3: Fibonacci sphere; n>=4: fixed-seed
/// normalized Gaussians. The grid depends only on (n, m).
std::vector<Eigen::VectorXd> unit_direction_grid(int n, int m);

Eigen::VectorXd random_unit(int n, std::mt19937_64& rng);

/// Haar-ish random orthogonal matrix (QR of a Gaussian matrix with sign
/// correction); includes reflections.
Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng);

/// Random invertible matrix R1 * diag(exp(s)) * R2^T with log-singular
/// values drawn uniformly from [-log_sv_range, log_sv_range].
Eigen::MatrixXd random_gl(int n, std::mt19937_64& rng, double log_sv_range = 1.0);

/// Random symmetric positive-definite matrix with the same spectral bounds.
Eigen::MatrixXd random_posdef(int n, std::mt19937_64& rng, double log_sv_range = 1.0);

}  // namespace bmslice
