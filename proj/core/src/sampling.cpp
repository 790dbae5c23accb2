#include "bmslice/sampling.hpp"

#include <cmath>
#include <numbers>

namespace bmslice {

std::vector<Eigen::VectorXd> unit_direction_grid(int n, int m) {
  std::vector<Eigen::VectorXd> dirs;
  dirs.reserve(m);
  if (n == 2) {
    for (int j = 0; j < m; ++j) {
      double th = 2.0 * std::numbers::pi * j / m;
      Eigen::VectorXd u(2);
      u << std::cos(th), std::sin(th);
      dirs.push_back(std::move(u));
    }
    return dirs;
  }
  if (n == 3) {
    // Fibonacci sphere.
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < m; ++j) {
      double z = 1.0 - 2.0 * (j + 0.5) / m;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double phi = ga * j;
      Eigen::VectorXd u(3);
      u << r * std::cos(phi), r * std::sin(phi), z;
      dirs.push_back(std::move(u));
    }
    return dirs;
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (static_cast<uint64_t>(n) << 32) ^
                      static_cast<uint64_t>(m));
  for (int j = 0; j < m; ++j) dirs.push_back(random_unit(n, rng));
  return dirs;
}

Eigen::VectorXd random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) v[i] = g(rng);
    norm = v.norm();
  } while (norm < 1e-12);
  return v / norm;
}

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  return q;
}

Eigen::MatrixXd random_gl(int n, std::mt19937_64& rng, double log_sv_range) {
  std::uniform_real_distribution<double> u(-log_sv_range, log_sv_range);
  Eigen::MatrixXd r1 = random_orthogonal(n, rng);
  Eigen::MatrixXd r2 = random_orthogonal(n, rng);
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s[i] = std::exp(u(rng));
  return r1 * s.asDiagonal() * r2.transpose();
}

Eigen::MatrixXd random_posdef(int n, std::mt19937_64& rng, double log_sv_range) {
  std::uniform_real_distribution<double> u(-log_sv_range, log_sv_range);
  Eigen::MatrixXd r = random_orthogonal(n, rng);
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s[i] = std::exp(u(rng));
  Eigen::MatrixXd p = r * s.asDiagonal() * r.transpose();
  return 0.5 * (p + p.transpose());
}

}  // namespace bmslice
