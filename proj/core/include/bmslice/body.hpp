#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "bmslice/errors.hpp"

namespace bmslice {

inline constexpr double kGeomTol = 1e-9;

/// Representation tag for a symmetric convex body.
/// V: body = conv{+-g_i}.  H: body = {x : |<g_i, x>| <= 1 for all i}.
enum class Rep { V, H };

/// Unit vector in R^n; normalized on construction.
class Direction {
 public:
  explicit Direction(Eigen::VectorXd u);

  const Eigen::VectorXd& vec() const { return u_; }
  int dim() const { return static_cast<int>(u_.size()); }

 private:
  Eigen::VectorXd u_;
};

/// Invertible n x n matrix together with an orthogonality cache.
class GroupElem {
 public:
  explicit GroupElem(Eigen::MatrixXd mat);

  static GroupElem identity(int n);
  static GroupElem rotation2d(double theta);

  const Eigen::MatrixXd& mat() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  bool is_orthogonal() const { return is_orthogonal_; }
  double det() const { return det_; }

  GroupElem inverse() const;
  GroupElem operator*(const GroupElem& rhs) const;

 private:
  Eigen::MatrixXd mat_;
  double det_ = 0.0;
  bool is_orthogonal_ = false;
};

/// Origin-symmetric full-dimensional convex polytope, stored as one
/// representative per +- generator pair. Construction rejects zero rows,
/// rank-deficient generator sets and k < n.
class SymBody {
 public:
  SymBody(int n, Rep rep, std::vector<Eigen::VectorXd> gens);

  int dim() const { return n_; }
  Rep rep() const { return rep_; }
  const std::vector<Eigen::VectorXd>& gens() const { return gens_; }

  /// Vertices (one per +- pair) of the H-polytope {x : |<g_i,x>| <= 1} built
  /// from this body's generators. For an H-body these are its own vertices;
  /// for a V-body they are the vertices of its polar. Computed lazily and
  /// shared across copies; cost is combinatorial in C(k, n).
  const std::vector<Eigen::VectorXd>& hpoly_vertices() const;

 private:
  int n_ = 0;
  Rep rep_ = Rep::V;
  std::vector<Eigen::VectorXd> gens_;

  struct VertexCache {
    std::mutex mu;
    bool ready = false;
    std::vector<Eigen::VectorXd> verts;
  };
  std::shared_ptr<VertexCache> vcache_;
};

/// Vertex enumeration for {x : |<facets_i, x>| <= 1}: all n-subsets of
/// facets with sign patterns, feasibility-checked and deduplicated; returns
/// one vertex per +- pair.
std::vector<Eigen::VectorXd> hpolytope_vertices(const std::vector<Eigen::VectorXd>& facets,
                                                int n);

/// Support function h_A(u) = max_{a in A} <a, u>. Exact for V-bodies; for
/// H-bodies solved by vertex enumeration (n <= 3) or LP iteration (n >= 4).
double support(const SymBody& a, const Eigen::VectorXd& u);
double support(const SymBody& a, const Direction& u);

/// Minkowski gauge inf{t > 0 : x in tA}; the norm with unit ball A.
double gauge(const SymBody& a, const Eigen::VectorXd& x);

/// Polar body: swaps the representation tag, generators kept bit-exactly.
SymBody polar(const SymBody& a);

/// Linear image gA: V-generators map by g, H-generators by g^-T.
SymBody act(const GroupElem& g, const SymBody& a);

struct HausdorffOptions {
  int samples = 4096;   // direction-grid size
  bool refine = true;   // Nelder-Mead polish around the best sample
  int workers = 0;      // 0 = hardware concurrency
};

/// Hausdorff distance via d_H(A,B) = sup_u |h_A(u) - h_B(u)| over a
/// deterministic direction grid with local refinement. Grid error before
/// refinement is O(diam / sqrt(m)) in n = 2, 3.
double hausdorff(const SymBody& a, const SymBody& b, const HausdorffOptions& opt = {});
double hausdorff(const SymBody& a, const SymBody& b, int samples);

/// Seeded random V-body: k in [n+1, 4n] normalized Gaussian generators,
/// redrawn on rank deficiency.
SymBody random_sym_body(int n, std::mt19937_64& rng);

/// Fine V-polytope approximation of the unit ball (m generators, one per
/// +- pair). n = 2 or 3.
SymBody ball_body(int n, int m);

/// Convenience bodies used throughout tests and docs.
SymBody square_body();        // H-rep, gens {e1, e2}
SymBody cross_polytope2d();   // V-rep, gens {e1, e2}

}  // namespace bmslice
