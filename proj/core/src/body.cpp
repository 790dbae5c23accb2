#include "bmslice/body.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bmslice/linalg.hpp"
#include "bmslice/optimize.hpp"
#include "bmslice/parallel.hpp"
#include "bmslice/sampling.hpp"
#include "simplex.hpp"

namespace bmslice {

Direction::Direction(Eigen::VectorXd u) : u_(std::move(u)) {
  double norm = u_.norm();
  if (norm < kSingularTol) throw Error("Direction: zero vector");
  u_ /= norm;
}

GroupElem::GroupElem(Eigen::MatrixXd mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1)
    throw SingularMatrix("GroupElem: matrix must be square");
  det_ = mat_.determinant();
  if (std::abs(det_) <= kSingularTol)
    throw SingularMatrix("GroupElem: |det| below singular tolerance");
  const int n = static_cast<int>(mat_.rows());
  is_orthogonal_ =
      (mat_.transpose() * mat_ - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <=
      1e-9;
}

GroupElem GroupElem::identity(int n) { return GroupElem(Eigen::MatrixXd::Identity(n, n)); }

GroupElem GroupElem::rotation2d(double theta) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return GroupElem(std::move(r));
}

GroupElem GroupElem::inverse() const { return GroupElem(mat_.inverse()); }

GroupElem GroupElem::operator*(const GroupElem& rhs) const {
  return GroupElem(mat_ * rhs.mat_);
}

SymBody::SymBody(int n, Rep rep, std::vector<Eigen::VectorXd> gens)
    : n_(n), rep_(rep), gens_(std::move(gens)), vcache_(std::make_shared<VertexCache>()) {
  if (n_ < 1) throw InvalidBody("SymBody: dimension must be >= 1");
  const int k = static_cast<int>(gens_.size());
  if (k < n_) throw InvalidBody("SymBody: need at least n generators");
  Eigen::MatrixXd g(n_, k);
  for (int j = 0; j < k; ++j) {
    if (gens_[j].size() != n_) throw InvalidBody("SymBody: generator of wrong dimension");
    if (gens_[j].norm() < kSingularTol) throw InvalidBody("SymBody: zero generator");
    g.col(j) = gens_[j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  if (svd.singularValues()[n_ - 1] <= 1e-10 * svd.singularValues()[0])
    throw InvalidBody("SymBody: generators do not span R^n");
}

const std::vector<Eigen::VectorXd>& SymBody::hpoly_vertices() const {
  std::lock_guard<std::mutex> lock(vcache_->mu);
  if (!vcache_->ready) {
    vcache_->verts = hpolytope_vertices(gens_, n_);
    vcache_->ready = true;
  }
  return vcache_->verts;
}

std::vector<Eigen::VectorXd> hpolytope_vertices(const std::vector<Eigen::VectorXd>& facets,
                                                int n) {
  const int k = static_cast<int>(facets.size());
  // C(k, n) * 2^(n-1) candidate systems.
  double budget = std::pow(2.0, n - 1);
  for (int i = 0; i < n; ++i) budget *= static_cast<double>(k - i) / (i + 1);
  if (budget > 5e7) throw Error("hpolytope_vertices: enumeration budget exceeded");

  std::vector<Eigen::VectorXd> verts;
  std::vector<int> subset(n);
  for (int i = 0; i < n; ++i) subset[i] = i;

  Eigen::MatrixXd sys(n, n);
  Eigen::VectorXd rhs(n);
  const long npatterns = 1L << (n - 1);

  while (true) {
    for (int i = 0; i < n; ++i) sys.row(i) = facets[subset[i]].transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    if (lu.isInvertible()) {
      for (long pat = 0; pat < npatterns; ++pat) {
        rhs[0] = 1.0;  // fix the first chosen sign: one vertex per +- pair
        for (int i = 1; i < n; ++i) rhs[i] = (pat >> (i - 1)) & 1 ? -1.0 : 1.0;
        Eigen::VectorXd x = lu.solve(rhs);
        bool feasible = true;
        for (int j = 0; j < k && feasible; ++j) {
          if (std::abs(facets[j].dot(x)) > 1.0 + kGeomTol) feasible = false;
        }
        if (!feasible) continue;
        bool dup = false;
        double scale = 1.0 + x.norm();
        for (const auto& v : verts) {
          if ((v - x).norm() <= 1e-9 * scale || (v + x).norm() <= 1e-9 * scale) {
            dup = true;
            break;
          }
        }
        if (!dup) verts.push_back(std::move(x));
      }
    }
    // next n-subset of [0, k)
    int i = n - 1;
    while (i >= 0 && subset[i] == k - n + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < n; ++j) subset[j] = subset[j - 1] + 1;
  }
  return verts;
}

double support(const SymBody& a, const Eigen::VectorXd& u) {
  if (u.size() != a.dim()) throw DimensionMismatch("support: direction dimension");
  if (a.rep() == Rep::V) {
    double best = 0.0;
    for (const auto& g : a.gens()) best = std::max(best, std::abs(g.dot(u)));
    return best;
  }
  if (u.norm() < kSingularTol) return 0.0;
  if (a.dim() <= 3) {
    double best = 0.0;
    for (const auto& v : a.hpoly_vertices()) best = std::max(best, std::abs(v.dot(u)));
    return best;
  }
  auto lp = detail::atomic_norm_lp(a.gens(), u);
  if (!lp.feasible) throw UnboundedBody("support: facet functionals do not span");
  return lp.value;
}

double support(const SymBody& a, const Direction& u) { return support(a, u.vec()); }

double gauge(const SymBody& a, const Eigen::VectorXd& x) {
  if (x.size() != a.dim()) throw DimensionMismatch("gauge: point dimension");
  if (a.rep() == Rep::H) {
    double best = 0.0;
    for (const auto& g : a.gens()) best = std::max(best, std::abs(g.dot(x)));
    return best;
  }
  // gauge of conv{+-g} = support of the polar H-body, same generators.
  if (x.norm() < kSingularTol) return 0.0;
  if (a.dim() <= 3) {
    double best = 0.0;
    for (const auto& v : a.hpoly_vertices()) best = std::max(best, std::abs(v.dot(x)));
    return best;
  }
  auto lp = detail::atomic_norm_lp(a.gens(), x);
  if (!lp.feasible) throw UnboundedBody("gauge: generators do not span");
  return lp.value;
}

SymBody polar(const SymBody& a) {
  return SymBody(a.dim(), a.rep() == Rep::V ? Rep::H : Rep::V, a.gens());
}

SymBody act(const GroupElem& g, const SymBody& a) {
  if (g.dim() != a.dim()) throw DimensionMismatch("act: group element dimension");
  std::vector<Eigen::VectorXd> out;
  out.reserve(a.gens().size());
  if (a.rep() == Rep::V) {
    for (const auto& v : a.gens()) out.push_back(g.mat() * v);
  } else {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(g.mat().transpose());
    for (const auto& v : a.gens()) out.push_back(lu.solve(v));
  }
  return SymBody(a.dim(), a.rep(), std::move(out));
}

double hausdorff(const SymBody& a, const SymBody& b, const HausdorffOptions& opt) {
  if (a.dim() != b.dim()) throw DimensionMismatch("hausdorff: body dimensions differ");
  const int n = a.dim();
  const int m = std::max(8, opt.samples);
  auto dirs = unit_direction_grid(n, m);

  int workers = opt.workers > 0 ? opt.workers : default_workers();
  auto [best, best_i] = parallel_argmax(
      static_cast<long>(dirs.size()), workers,
      [&](long i) { return std::abs(support(a, dirs[i]) - support(b, dirs[i])); });

  if (!opt.refine) return best;

  double scale = n == 2 ? 2.0 * std::numbers::pi / m : 2.0 / std::sqrt(static_cast<double>(m));
  auto objective = [&](const Eigen::VectorXd& v) {
    double norm = v.norm();
    if (norm < 1e-8) return 0.0;
    Eigen::VectorXd u = v / norm;
    return std::abs(support(a, u) - support(b, u));
  };
  auto res = nelder_mead_max(objective, dirs[best_i], scale, 120);
  return std::max(best, res.value);
}

double hausdorff(const SymBody& a, const SymBody& b, int samples) {
  HausdorffOptions opt;
  opt.samples = samples;
  return hausdorff(a, b, opt);
}

SymBody random_sym_body(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kd(n + 1, 4 * n);
  for (int attempt = 0; attempt < 64; ++attempt) {
    int k = kd(rng);
    std::vector<Eigen::VectorXd> gens;
    gens.reserve(k);
    for (int j = 0; j < k; ++j) gens.push_back(random_unit(n, rng));
    try {
      return SymBody(n, Rep::V, std::move(gens));
    } catch (const InvalidBody&) {
      // rank-deficient draw; retry
    }
  }
  throw Error("random_sym_body: could not draw a full-dimensional body");
}

SymBody ball_body(int n, int m) {
  // One generator per +- pair: half circle / upper hemisphere.
  std::vector<Eigen::VectorXd> gens;
  gens.reserve(m);
  if (n == 2) {
    for (int j = 0; j < m; ++j) {
      double th = std::numbers::pi * j / m;
      Eigen::VectorXd u(2);
      u << std::cos(th), std::sin(th);
      gens.push_back(std::move(u));
    }
  } else if (n == 3) {
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < m; ++j) {
      double z = (j + 0.5) / m;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double phi = ga * j;
      Eigen::VectorXd u(3);
      u << r * std::cos(phi), r * std::sin(phi), z;
      gens.push_back(std::move(u));
    }
  } else {
    throw Error("ball_body: only n = 2 or 3");
  }
  return SymBody(n, Rep::V, std::move(gens));
}

SymBody square_body() {
  std::vector<Eigen::VectorXd> gens{Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
  return SymBody(2, Rep::H, std::move(gens));
}

SymBody cross_polytope2d() {
  std::vector<Eigen::VectorXd> gens{Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)};
  return SymBody(2, Rep::V, std::move(gens));
}

}  // namespace bmslice
