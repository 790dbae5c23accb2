#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bmslice/body.hpp"
#include "bmslice/slicing.hpp"

namespace bmslice {

/// Canonical orbit representative: a body in John position.
class OrbitPoint {
 public:
  explicit OrbitPoint(SymBody rep, double tol = kSliceMembershipTol,
                      double eps = kDefaultMveeEps);

  const SymBody& rep() const { return rep_; }

 private:
  SymBody rep_;
};

struct QuotientOptions {
  int angle_steps = 4096;   // rotation grid (n=2) and support-profile size
  int restarts = 64;        // random orthogonal restarts (n>=3)
  int dir_samples = 1024;   // direction grid for n>=3 distance evaluations
  bool refine = true;       // golden-section / Nelder-Mead polish
  double eps = kDefaultMveeEps;
  bool assume_john_positioned = false;
  uint64_t seed = 42;
};

/// Distance between GL(n)-orbits: both bodies are John-positioned, then
/// d_H is minimized over the orthogonal group (exhaustive angle grid plus
/// reflection and golden-section refinement in n=2; seeded random restarts
/// with local descent for n>=3).
double quotient_distance(const SymBody& a, const SymBody& b,
                         const QuotientOptions& opt = {});

struct GlOracleOptions {
  int angle_steps = 16;      // grid per rotation angle, over [0, pi)
  int sv_steps = 9;          // grid per log-singular value
  double log_sv_range = 2.0; // log-singular values in [-range, range]
  int dir_samples = 512;
  bool refine = true;
};

/// Independent upper-bound oracle for the GL(2)-orbit distance: brute grid
/// over the SVD parameterization g = R(phi) diag(e^s1, e^s2) R(psi)^T of
/// d_H(gA, B), with Nelder-Mead refinement. n = 2 only.
double gl_orbit_distance_oracle(const SymBody& a, const SymBody& b,
                                const GlOracleOptions& opt = {});

struct BmOptions {
  int angle_steps = 4096;
  bool refine = true;
  double eps = kDefaultMveeEps;
  bool assume_john_positioned = false;
};

/// Banach-Mazur style multiplicative distance (>= 1): both bodies are
/// John-positioned, then min over sampled rotations/reflections o of
/// (max_u h_A/h_oB) * (max_u h_oB/h_A). n = 2.
double bm_distance(const SymBody& a, const SymBody& b, const BmOptions& opt = {});

struct CrossSectionOptions {
  double eps = kDefaultMveeEps;
  int angle_steps = 4096;
  double tie_tol = 1e-6;  // near-tie threshold for the gauge rule
};

struct CrossSectionEntry {
  OrbitPoint point;
  bool gauge_ambiguous = false;
};

/// Canonical representative per orbit: John position followed by a
/// deterministic orthogonal gauge (largest-support direction aligned to e1,
/// remaining freedom fixed lexicographically on the support profile).
/// Near-ties in the gauge rule set the ambiguity flag. n = 2 or 3.
std::vector<CrossSectionEntry> cross_section_from_slice(
    const std::vector<SymBody>& orbits, const CrossSectionOptions& opt = {});

struct NetReport {
  double eps = 0.0;
  std::vector<OrbitPoint> centers;
  double coverage_fraction = 0.0;
};

/// Lighter metric settings for net construction: grid-only distances at 1024
/// angles over pre-positioned samples.
QuotientOptions net_default_options();

/// Greedy eps-net of John-positioned samples under quotient_distance:
/// every sample within eps of a center, centers pairwise more than eps apart.
NetReport slice_net(const std::vector<SymBody>& samples, double eps,
                    const QuotientOptions& opt = net_default_options());

}  // namespace bmslice
