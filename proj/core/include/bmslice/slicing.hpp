#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "bmslice/body.hpp"
#include "bmslice/ellipsoid.hpp"

namespace bmslice {

/// Membership tolerance for the John slice: A is a slice point iff
/// ||M_{j(A)} - I||_F <= kSliceMembershipTol.
inline constexpr double kSliceMembershipTol = 1e-6;

/// Symmetric positive-definite matrix, the canonical coset representative of
/// g O(n) under polar decomposition g = P * O.
class PosDef {
 public:
  explicit PosDef(Eigen::MatrixXd p);

  const Eigen::MatrixXd& P() const { return p_; }
  int dim() const { return static_cast<int>(p_.rows()); }

 private:
  Eigen::MatrixXd p_;
};

struct PolarDecomposition {
  PosDef pd;
  GroupElem orthogonal;
};

/// g = P * O with P = (g g^T)^(1/2) symmetric positive definite and O
/// orthogonal. P depends only on the coset g O(n).
PolarDecomposition polar_decompose(const GroupElem& g);

/// Slicing map into PD(n): returns P = M^(-1/2) for M the John ellipsoid
/// matrix of A. Applying P^-1 to A lands in the John slice.
PosDef slicing_map_john(const SymBody& a, double eps = kDefaultMveeEps);

/// Mirror of slicing_map_john built on the Loewner ellipsoid.
PosDef slicing_map_lowner(const SymBody& a, double eps = kDefaultMveeEps);

/// Representative of A's orbit whose John ellipsoid is the unit ball.
SymBody john_position(const SymBody& a, double eps = kDefaultMveeEps);

/// Representative of A's orbit whose Loewner ellipsoid is the unit ball.
SymBody lowner_position(const SymBody& a, double eps = kDefaultMveeEps);

struct SliceAuditOptions {
  double pd_threshold = 1e-3;   // ||P - I|| above which g counts as non-orthogonal
  double perturbation = 1e-3;   // generator noise used by the proxy checks
  int limit_steps = 3;          // length of sampled convergent sequences
  uint64_t seed = 42;
  double solver_eps = kDefaultMveeEps;
  /// Maps an arbitrary body to a claimed slice point on its orbit; used by
  /// the saturation proxy. Defaults to john_position.
  std::function<SymBody(const SymBody&)> orbit_projector;
};

struct DisjointnessWitness {
  Eigen::MatrixXd g;   // offending group element
  double pd_distance;  // ||P - I||_F of its positive part
  int sample_index;
};

struct SliceAuditReport {
  bool h_invariant = true;
  std::vector<DisjointnessWitness> disjointness_witnesses;
  bool saturation_open_proxy = true;
  bool closedness_proxy = true;
  int checks_run = 0;

  bool all_passed() const {
    return h_invariant && disjointness_witnesses.empty() && saturation_open_proxy &&
           closedness_proxy;
  }
};

/// Numerical audit of the slice axioms for a candidate membership predicate:
/// (1) orthogonal invariance on member samples, (3) disjointness g S and S
/// for group elements with non-trivial positive part, and sampled proxies for
/// (2) closedness under limits and (4) openness of the saturation.
SliceAuditReport check_slice_axioms(
    const std::function<bool(const SymBody&)>& membership,
    const std::vector<SymBody>& samples, const std::vector<GroupElem>& group_samples,
    const SliceAuditOptions& opt = {});

/// Linear GL(n) action on a flattened target space R^m.
using GlLinearAction =
    std::function<Eigen::VectorXd(const Eigen::MatrixXd& g, const Eigen::VectorXd& y)>;

/// Map defined on slice points.
using SliceMap = std::function<Eigen::VectorXd(const SymBody&)>;

/// Ready-made actions for common targets.
GlLinearAction vector_action();      // y (as R^n) -> g y
GlLinearAction quad_form_action();   // M (row-major R^{n^2}) -> g^-T M g^-1
GlLinearAction congruence_action();  // M (row-major R^{n^2}) -> g M g^T

/// Extends an O(n)-equivariant map defined on the John slice to the whole
/// space by F(A) = g . f(g^-1 A) with g = slicing_map_john(A). Spot-checks
/// the equivariance of f on the slice and throws NotEquivariantOnSlice if it
/// fails beyond `equivariance_tol`.
Eigen::VectorXd extend_equivariant(const SliceMap& f_on_slice, const GlLinearAction& action,
                                   const SymBody& a, double eps = kDefaultMveeEps,
                                   double equivariance_tol = 1e-4);

}  // namespace bmslice
