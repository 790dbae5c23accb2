#include "bmslice/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bmslice/linalg.hpp"
#include "bmslice/optimize.hpp"
#include "bmslice/sampling.hpp"

namespace bmslice {

Ellipsoid::Ellipsoid(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw Error("Ellipsoid: matrix must be square");
  if (!is_symmetric(m_)) throw Error("Ellipsoid: matrix not symmetric");
  m_ = 0.5 * (m_ + m_.transpose().eval());
  if (min_eigenvalue_sym(m_) <= kEigFloor)
    throw Error("Ellipsoid: matrix not positive definite");
}

Ellipsoid Ellipsoid::unit_ball(int n) { return Ellipsoid(Eigen::MatrixXd::Identity(n, n)); }

double Ellipsoid::support(const Eigen::VectorXd& u) const {
  Eigen::VectorXd w = m_.ldlt().solve(u);
  return std::sqrt(std::max(0.0, u.dot(w)));
}

Ellipsoid Ellipsoid::polar() const { return Ellipsoid(sym_inverse(m_)); }

namespace {

struct SolverState {
  Eigen::MatrixXd x;      // n x k points
  Eigen::VectorXd p;      // weights
  Eigen::MatrixXd linv;   // Lambda(p)^-1
  Eigen::VectorXd kappa;  // x_i^T Linv x_i
  double logdet = 0.0;    // log det Lambda, tracked incrementally

  void refactor() {
    const int n = static_cast<int>(x.rows());
    Eigen::MatrixXd lambda = x * p.asDiagonal() * x.transpose();
    lambda = 0.5 * (lambda + lambda.transpose().eval());
    Eigen::LLT<Eigen::MatrixXd> llt(lambda);
    if (llt.info() != Eigen::Success)
      throw NotFullDimensional("mvee_centered: weight support lost full rank");
    linv = llt.solve(Eigen::MatrixXd::Identity(n, n));
    linv = 0.5 * (linv + linv.transpose().eval());
    kappa = (x.array() * (linv * x).array()).colwise().sum().transpose();
    logdet = 0.0;
    for (int i = 0; i < n; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
  }
};

}  // namespace

MveeReport mvee_centered(const std::vector<Eigen::VectorXd>& points, const MveeOptions& opt) {
  const int k = static_cast<int>(points.size());
  if (k == 0) throw NotFullDimensional("mvee_centered: empty point set");
  const int n = static_cast<int>(points[0].size());
  if (opt.eps <= 0.0 || opt.eps > 1e-2) throw Error("mvee_centered: eps must be in (0, 1e-2]");
  if (k < n) throw NotFullDimensional("mvee_centered: fewer points than dimensions");

  SolverState s;
  s.x.resize(n, k);
  for (int j = 0; j < k; ++j) {
    if (points[j].size() != n) throw DimensionMismatch("mvee_centered: point dimension");
    s.x.col(j) = points[j];
  }
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(s.x);
    if (svd.singularValues()[n - 1] <= 1e-10 * svd.singularValues()[0])
      throw NotFullDimensional("mvee_centered: points do not span R^n");
  }

  s.p = Eigen::VectorXd::Constant(k, 1.0 / k);
  s.refactor();

  const long max_iters = opt.max_iters > 0 ? opt.max_iters : 100000L * n;
  const int refactor_interval = 256;
  const int rebalance_interval = 64;
  long iters = 0;
  int stale = 0;
  int since_rebalance = 0;

  // Multiplicative rebalancing pass p_i <- p_i kappa_i / n. It preserves
  // sum p = 1, never decreases log det Lambda, and moves every coordinate at
  // once, which the single-index steps need when the weight support is large
  // and nearly uniform.
  auto rebalance = [&] {
    for (int i = 0; i < k; ++i) s.p[i] *= s.kappa[i] / n;
    double total = s.p.sum();
    if (total > 0.0) s.p /= total;
    s.refactor();
  };

  // Damped Newton step on the support-restricted stationarity system
  // kappa_i(p) = n. The Jacobian is -(K o K) with K the Gram matrix in the
  // Lambda^-1 metric; a small ridge keeps it solvable when the optimal
  // weights are non-unique (many points on the optimal ellipsoid). The step
  // is halved until log det does not decrease, so the ascent stays monotone.
  auto newton_polish = [&]() -> bool {
    std::vector<int> sup;
    for (int i = 0; i < k; ++i)
      if (s.p[i] > 1e-12) sup.push_back(i);
    const int m = static_cast<int>(sup.size());
    if (m < n) return false;
    Eigen::MatrixXd xs(n, m);
    for (int a = 0; a < m; ++a) xs.col(a) = s.x.col(sup[a]);
    Eigen::MatrixXd kmat = xs.transpose() * s.linv * xs;
    Eigen::MatrixXd jac = kmat.cwiseProduct(kmat);
    jac.diagonal().array() += 1e-10 * jac.diagonal().maxCoeff();
    Eigen::VectorXd resid(m);
    for (int a = 0; a < m; ++a) resid[a] = s.kappa[sup[a]] - n;
    Eigen::VectorXd delta = jac.ldlt().solve(resid);
    if (!delta.allFinite()) return false;

    const double before = s.logdet;
    const Eigen::VectorXd p_save = s.p;
    double step = 1.0;
    for (int attempt = 0; attempt < 12; ++attempt, step *= 0.5) {
      Eigen::VectorXd p_new = p_save;
      for (int a = 0; a < m; ++a)
        p_new[sup[a]] = std::max(0.0, p_save[sup[a]] + step * delta[a]);
      double total = p_new.sum();
      if (total <= 0.0) continue;
      s.p = p_new / total;
      try {
        s.refactor();
      } catch (const NotFullDimensional&) {
        continue;
      }
      if (s.logdet >= before - 1e-12) return true;
    }
    s.p = p_save;
    s.refactor();
    return false;
  };

  std::vector<double> trace;
  if (opt.trace_objective) trace.push_back(s.logdet);

  auto support_count = [&] {
    int c = 0;
    for (int i = 0; i < k; ++i)
      if (s.p[i] > 0.0) ++c;
    return c;
  };

  while (true) {
    int jmax = 0, jmin = -1;
    for (int i = 1; i < k; ++i)
      if (s.kappa[i] > s.kappa[jmax]) jmax = i;
    for (int i = 0; i < k; ++i) {
      if (s.p[i] > 0.0 && (jmin < 0 || s.kappa[i] < s.kappa[jmin])) jmin = i;
    }
    double eps_plus = s.kappa[jmax] / n - 1.0;
    double eps_minus = 1.0 - s.kappa[jmin] / n;

    if (std::max(eps_plus, eps_minus) <= opt.eps) {
      if (stale == 0) break;  // state is exact
      s.refactor();
      stale = 0;
      continue;  // re-test on fresh numbers
    }

    int j;
    double beta;
    if (eps_plus >= eps_minus) {
      j = jmax;
      double kj = s.kappa[j];
      beta = (kj / n - 1.0) / (kj - 1.0);
    } else {
      j = jmin;
      double kj = s.kappa[j];
      double clip = -s.p[j] / (1.0 - s.p[j]);
      beta = kj <= 1.0 + 1e-14 ? clip : std::max((kj / n - 1.0) / (kj - 1.0), clip);
      if (beta <= clip + 1e-18 && support_count() - 1 < n) beta = 0.5 * clip;  // keep rank
    }

    if (beta >= 1.0 - 1e-9) {
      // Full jump onto one point; only reachable for n = 1, where the exact
      // step is always beta = 1 and the rank-one update degenerates.
      s.p.setZero();
      s.p[j] = 1.0;
      s.refactor();
      stale = 0;
    } else {
      double kj = s.kappa[j];
      double denom = 1.0 - beta + beta * kj;
      Eigen::VectorXd z = s.linv * s.x.col(j);
      Eigen::VectorXd w = s.x.transpose() * z;
      double a = 1.0 / (1.0 - beta);
      s.linv = a * (s.linv - (beta / denom) * (z * z.transpose()));
      s.kappa = a * (s.kappa - (beta / denom) * w.array().square().matrix());
      s.logdet += (n - 1) * std::log1p(-beta) + std::log(denom);
      double clip = -s.p[j] / (1.0 - s.p[j]);
      s.p *= (1.0 - beta);
      s.p[j] += beta;
      if (beta <= clip + 1e-18) s.p[j] = 0.0;
    }

    if (opt.trace_objective) trace.push_back(s.logdet);

    if (++since_rebalance >= rebalance_interval) {
      rebalance();
      double gap = std::max(s.kappa.maxCoeff() / n - 1.0, 0.0);
      if (gap > opt.eps && gap < 1e-2) newton_polish();
      stale = 0;
      since_rebalance = 0;
      if (opt.trace_objective) trace.push_back(s.logdet);
    } else if (++stale >= refactor_interval) {
      s.refactor();
      stale = 0;
    }
    if (++iters > max_iters) {
      std::vector<double> wts(s.p.data(), s.p.data() + k);
      double achieved = s.kappa.maxCoeff() / n - 1.0;
      throw NoConvergence("mvee_centered: iteration budget exceeded", std::move(wts),
                          achieved, iters);
    }
  }

  s.refactor();
  double kmax = s.kappa.maxCoeff();
  Eigen::MatrixXd m = s.linv / kmax;
  m = 0.5 * (m + m.transpose().eval());
  // Post-hoc guarantee: every point satisfies x^T M x <= 1.
  double worst = 0.0;
  for (int j = 0; j < k; ++j) worst = std::max(worst, s.x.col(j).dot(m * s.x.col(j)));
  if (worst > 1.0) m /= worst;

  MveeReport rep{Ellipsoid(std::move(m)), s.p, kmax / n - 1.0, iters, std::move(trace)};
  return rep;
}

Ellipsoid lowner(const SymBody& a, double eps) {
  MveeOptions opt;
  opt.eps = eps;
  if (a.rep() == Rep::V) return mvee_centered(a.gens(), opt).ellipsoid;
  // H-body: minimal ellipsoid over its vertex set.
  return mvee_centered(a.hpoly_vertices(), opt).ellipsoid;
}

Ellipsoid john(const SymBody& a, double eps) {
  MveeOptions opt;
  opt.eps = eps;
  if (a.rep() == Rep::H) {
    // j(A) = polar of the minimal ellipsoid of conv{+-gens}.
    Eigen::MatrixXd nmat = mvee_centered(a.gens(), opt).ellipsoid.M();
    return Ellipsoid(sym_inverse(nmat));
  }
  // V-body: j(A) = polar of the minimal ellipsoid of the polar H-body.
  Eigen::MatrixXd lmat = mvee_centered(a.hpoly_vertices(), opt).ellipsoid.M();
  return Ellipsoid(sym_inverse(lmat));
}

ContainmentBounds containment_bounds(const SymBody& a, double eps) {
  Ellipsoid inner = john(a, eps);
  Eigen::MatrixXd minv = sym_inverse(inner.M());
  auto ratio = [&](const Eigen::VectorXd& u) {
    double he = std::sqrt(std::max(kEigFloor, u.dot(minv * u)));
    return support(a, u) / he;
  };
  const int m = 2048;
  auto dirs = unit_direction_grid(a.dim(), m);
  double best = 0.0;
  int best_i = 0;
  for (int i = 0; i < m; ++i) {
    double v = ratio(dirs[i]);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  auto objective = [&](const Eigen::VectorXd& v) {
    double norm = v.norm();
    if (norm < 1e-8) return 0.0;
    return ratio((v / norm).eval());
  };
  double scale = a.dim() == 2 ? 2.0 * std::numbers::pi / m : 2.0 / std::sqrt(double(m));
  auto res = nelder_mead_max(objective, dirs[best_i], scale, 120);
  return {std::move(inner), std::max(best, res.value)};
}

}  // namespace bmslice
