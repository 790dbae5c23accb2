#include "bmslice/slicing.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "bmslice/linalg.hpp"
#include "bmslice/sampling.hpp"

namespace bmslice {

PosDef::PosDef(Eigen::MatrixXd p) : p_(std::move(p)) {
  if (p_.rows() != p_.cols() || p_.rows() < 1) throw Error("PosDef: matrix must be square");
  if (!is_symmetric(p_)) throw Error("PosDef: matrix not symmetric");
  p_ = 0.5 * (p_ + p_.transpose().eval());
  if (min_eigenvalue_sym(p_) <= kEigFloor) throw Error("PosDef: matrix not positive definite");
}

PolarDecomposition polar_decompose(const GroupElem& g) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.mat(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd p = svd.matrixU() * svd.singularValues().asDiagonal() *
                      svd.matrixU().transpose();
  Eigen::MatrixXd o = svd.matrixU() * svd.matrixV().transpose();
  return {PosDef(0.5 * (p + p.transpose().eval())), GroupElem(std::move(o))};
}

PosDef slicing_map_john(const SymBody& a, double eps) {
  return PosDef(sym_inv_sqrt(john(a, eps).M()));
}

PosDef slicing_map_lowner(const SymBody& a, double eps) {
  return PosDef(sym_inv_sqrt(lowner(a, eps).M()));
}

SymBody john_position(const SymBody& a, double eps) {
  // act(P^-1, A) with P = M^(-1/2), i.e. apply M^(1/2) directly.
  return act(GroupElem(sym_sqrt(john(a, eps).M())), a);
}

SymBody lowner_position(const SymBody& a, double eps) {
  return act(GroupElem(sym_sqrt(lowner(a, eps).M())), a);
}

SliceAuditReport check_slice_axioms(const std::function<bool(const SymBody&)>& membership,
                                    const std::vector<SymBody>& samples,
                                    const std::vector<GroupElem>& group_samples,
                                    const SliceAuditOptions& opt) {
  SliceAuditReport report;
  std::mt19937_64 rng(opt.seed);

  std::function<SymBody(const SymBody&)> project = opt.orbit_projector;
  if (!project) {
    double solver_eps = opt.solver_eps;
    project = [solver_eps](const SymBody& b) { return john_position(b, solver_eps); };
  }

  std::vector<int> member_idx;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    if (membership(samples[i])) member_idx.push_back(i);
  }

  for (int i : member_idx) {
    const SymBody& s = samples[i];
    for (const auto& g : group_samples) {
      ++report.checks_run;
      if (g.is_orthogonal()) {
        // Axiom 1: H-invariance.
        if (!membership(act(g, s))) report.h_invariant = false;
      } else {
        // Axiom 3: gS and S disjoint for g outside H.
        double pd_dist = (polar_decompose(g).pd.P() -
                          Eigen::MatrixXd::Identity(g.dim(), g.dim()))
                             .norm();
        if (pd_dist > opt.pd_threshold && membership(act(g, s))) {
          report.disjointness_witnesses.push_back({g.mat(), pd_dist, i});
        }
      }
    }
  }

  // Axiom 2 proxy: membership survives d_H-limits of sampled convergent
  // sequences built from orthogonal images approaching the identity.
  for (int i : member_idx) {
    const SymBody& s = samples[i];
    const int n = s.dim();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    w(0, n - 1) = 1.0;
    w(n - 1, 0) = -1.0;
    double angle = 0.5;
    bool tail_ok = true;
    for (int t = 0; t < opt.limit_steps; ++t) {
      angle *= 0.25;
      Eigen::MatrixXd rot = (angle * w).exp();
      if (!membership(act(GroupElem(rot), s))) tail_ok = false;
    }
    ++report.checks_run;
    if (!tail_ok || !membership(s)) report.closedness_proxy = false;
  }

  // Axiom 4 proxy: perturbations of saturated points still admit a slice
  // point on their orbit.
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i : member_idx) {
    const SymBody& s = samples[i];
    std::vector<Eigen::VectorXd> gens = s.gens();
    for (auto& g : gens) {
      Eigen::VectorXd noise(g.size());
      for (int d = 0; d < g.size(); ++d) noise[d] = gauss(rng);
      g += opt.perturbation * noise;
    }
    ++report.checks_run;
    try {
      SymBody perturbed(s.dim(), s.rep(), std::move(gens));
      if (!membership(project(perturbed))) report.saturation_open_proxy = false;
    } catch (const InvalidBody&) {
      report.saturation_open_proxy = false;
    }
  }

  return report;
}

GlLinearAction vector_action() {
  return [](const Eigen::MatrixXd& g, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return g * y;
  };
}

namespace {

Eigen::MatrixXd unflatten(const Eigen::VectorXd& y) {
  const int n = static_cast<int>(std::lround(std::sqrt(double(y.size()))));
  if (n * n != y.size()) throw DimensionMismatch("matrix action: target size not n^2");
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = y[r * n + c];
  return m;
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& m) {
  Eigen::VectorXd y(m.rows() * m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) y[r * m.cols() + c] = m(r, c);
  return y;
}

}  // namespace

GlLinearAction quad_form_action() {
  return [](const Eigen::MatrixXd& g, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    Eigen::MatrixXd m = unflatten(y);
    Eigen::MatrixXd gi = g.inverse();
    return flatten(gi.transpose() * m * gi);
  };
}

GlLinearAction congruence_action() {
  return [](const Eigen::MatrixXd& g, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return flatten(g * unflatten(y) * g.transpose());
  };
}

Eigen::VectorXd extend_equivariant(const SliceMap& f_on_slice, const GlLinearAction& action,
                                   const SymBody& a, double eps, double equivariance_tol) {
  PosDef p = slicing_map_john(a, eps);
  Eigen::MatrixXd pinv = sym_inverse(p.P());
  SymBody slice_point = act(GroupElem(pinv), a);

  // Spot-check O(n)-equivariance of f on the slice point we are about to use.
  Eigen::VectorXd f_s = f_on_slice(slice_point);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::MatrixXd o = random_orthogonal(a.dim(), rng);
    Eigen::VectorXd lhs = f_on_slice(act(GroupElem(o), slice_point));
    Eigen::VectorXd rhs = action(o, f_s);
    if ((lhs - rhs).norm() > equivariance_tol * (1.0 + rhs.norm()))
      throw NotEquivariantOnSlice("extend_equivariant: f is not O(n)-equivariant on the slice");
  }

  return action(p.P(), f_s);
}

}  // namespace bmslice
