#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bmslice/body.hpp"
#include "bmslice/ellipsoid.hpp"
#include "bmslice/linalg.hpp"
#include "bmslice/orbit.hpp"
#include "bmslice/sampling.hpp"
#include "bmslice/slicing.hpp"

using namespace bmslice;

namespace {

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

SymBody ellipse_body(double a, double b, int m) {
  std::vector<Eigen::VectorXd> gens;
  for (int j = 0; j < m; ++j) {
    double th = std::numbers::pi * j / m;
    gens.push_back(vec2(a * std::cos(th), b * std::sin(th)));
  }
  return SymBody(2, Rep::V, std::move(gens));
}

// O(n)-invariant fingerprint: sorted support values over a fixed grid.
Eigen::VectorXd sorted_profile(const SymBody& a, int m = 512) {
  auto dirs = unit_direction_grid(a.dim(), m);
  Eigen::VectorXd h(dirs.size());
  for (size_t i = 0; i < dirs.size(); ++i) h[i] = support(a, dirs[i]);
  std::sort(h.data(), h.data() + h.size());
  return h;
}

Eigen::VectorXd flatten(const Eigen::MatrixXd& m) {
  Eigen::VectorXd y(m.rows() * m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) y[r * m.cols() + c] = m(r, c);
  return y;
}

bool in_john_slice(const SymBody& b, double tol = kSliceMembershipTol) {
  return (john(b).M() - Eigen::MatrixXd::Identity(b.dim(), b.dim())).norm() <= tol;
}

}  // namespace

TEST_SUITE_BEGIN("slicing");

TEST_CASE("polar decomposition desk values") {
  std::mt19937_64 rng(41);
  Eigen::MatrixXd o = random_orthogonal(3, rng);
  auto po = polar_decompose(GroupElem(o));
  CHECK((po.pd.P() - Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-9);
  CHECK((po.orthogonal.mat() - o).norm() <= 1e-9);

  Eigen::MatrixXd d(2, 2);
  d << 2, 0, 0, 3;
  auto pd = polar_decompose(GroupElem(d));
  CHECK((pd.pd.P() - d).norm() <= 1e-12);
  CHECK((pd.orthogonal.mat() - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-12);
}

TEST_CASE("polar decomposition reconstructs and is coset-invariant") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    int n = 2 + t % 3;
    Eigen::MatrixXd g = random_gl(n, rng, 1.5);
    auto [p, o] = polar_decompose(GroupElem(g));
    CHECK((p.P() * o.mat() - g).norm() <= 1e-9 * (1.0 + g.norm()));
    CHECK((o.mat().transpose() * o.mat() - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-9);
    // P depends only on the coset g O(n)
    Eigen::MatrixXd q = random_orthogonal(n, rng);
    auto [p2, o2] = polar_decompose(GroupElem(g * q));
    CHECK((p2.P() - p.P()).norm() <= 1e-9 * (1.0 + p.P().norm()));
  }
}

TEST_CASE("slicing map desk values") {
  CHECK((slicing_map_john(ball_body(2, 512)).P() - Eigen::MatrixXd::Identity(2, 2)).norm() <=
        1e-3);
  Eigen::MatrixXd expect(2, 2);
  expect << 2, 0, 0, 1;
  CHECK((slicing_map_john(ellipse_body(2.0, 1.0, 512)).P() - expect).norm() <= 1e-3);
  CHECK((slicing_map_john(square_body()).P() - Eigen::MatrixXd::Identity(2, 2)).norm() <=
        1e-6);
}

TEST_CASE("john position lands on the slice and is idempotent") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 6; ++t) {
    SymBody a = random_sym_body(2 + t % 2, rng);
    SymBody pos = john_position(a);
    CHECK(in_john_slice(pos));
    SymBody pos2 = john_position(pos);
    CHECK((sorted_profile(pos2) - sorted_profile(pos)).cwiseAbs().maxCoeff() <= 1e-6);

    // classical sandwich: unit ball inside A inside the sqrt(n) ball
    auto dirs = unit_direction_grid(a.dim(), 512);
    for (const auto& u : dirs) {
      double h = support(pos, u);
      CHECK(h >= 1.0 - 1e-6);
      CHECK(h <= std::sqrt(double(a.dim())) + 1e-6);
    }
  }
}

TEST_CASE("lowner position scales the square correctly") {
  SymBody pos = lowner_position(square_body());
  // square / sqrt(2): support along e1 is 1/sqrt(2)
  CHECK(support(pos, vec2(1, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  CHECK((lowner(pos).M() - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-6);

  std::mt19937_64 rng(44);
  for (int t = 0; t < 6; ++t) {
    int n = 2 + t % 2;
    SymBody a = lowner_position(random_sym_body(n, rng));
    auto dirs = unit_direction_grid(n, 512);
    for (const auto& u : dirs) CHECK(support(a, u) >= 1.0 / std::sqrt(double(n)) - 1e-6);
  }
}

TEST_CASE("coset well-definedness under orthogonal images") {
  // john_position(oA) differs from john_position(A) by an orthogonal map;
  // equivalently their distance in the quotient metric vanishes.
  std::mt19937_64 rng(45);
  for (int t = 0; t < 6; ++t) {
    SymBody a = random_sym_body(2, rng);
    GroupElem o(random_orthogonal(2, rng));
    QuotientOptions opt;
    opt.assume_john_positioned = true;
    double d = quotient_distance(john_position(act(o, a)), john_position(a), opt);
    CHECK(d <= 1e-6);
  }
}

TEST_CASE("section property: slicing map recovers PD translations") {
  std::mt19937_64 rng(46);
  for (int t = 0; t < 6; ++t) {
    SymBody s = john_position(random_sym_body(2, rng));
    Eigen::MatrixXd p = random_posdef(2, rng, 0.8);
    PosDef got = slicing_map_john(act(GroupElem(p), s));
    CHECK((got.P() - p).norm() <= 1e-6 * (1.0 + p.norm()));
  }
}

TEST_CASE("slice axiom audit: John slice passes") {
  std::mt19937_64 rng(47);
  std::vector<SymBody> samples;
  for (int i = 0; i < 12; ++i) samples.push_back(john_position(random_sym_body(2, rng)));
  std::vector<GroupElem> group;
  for (int i = 0; i < 10; ++i) {
    if (i % 2 == 0) {
      group.emplace_back(random_orthogonal(2, rng));
    } else {
      Eigen::MatrixXd g;
      do {
        g = random_gl(2, rng, 1.0);
      } while ((polar_decompose(GroupElem(g)).pd.P() - Eigen::MatrixXd::Identity(2, 2))
                   .norm() <= 1e-2);
      group.emplace_back(g);
    }
  }
  auto membership = [](const SymBody& b) { return in_john_slice(b); };
  auto report = check_slice_axioms(membership, samples, group);
  CHECK(report.h_invariant);
  CHECK(report.disjointness_witnesses.empty());
  CHECK(report.saturation_open_proxy);
  CHECK(report.closedness_proxy);
  CHECK(report.checks_run > 0);
}

TEST_CASE("slice axiom audit: the trivial predicate violates disjointness") {
  std::mt19937_64 rng(48);
  std::vector<SymBody> samples{john_position(random_sym_body(2, rng))};
  std::vector<GroupElem> group;
  group.emplace_back(2.0 * Eigen::MatrixXd::Identity(2, 2));
  auto always = [](const SymBody&) { return true; };
  auto report = check_slice_axioms(always, samples, group);
  CHECK(!report.disjointness_witnesses.empty());
  CHECK(report.h_invariant);  // vacuous: no orthogonal elements supplied
}

TEST_CASE("slice axiom audit: rotations preserve membership") {
  std::mt19937_64 rng(49);
  std::vector<SymBody> samples{john_position(random_sym_body(2, rng))};
  std::vector<GroupElem> group{GroupElem::rotation2d(0.7), GroupElem::rotation2d(2.1)};
  auto membership = [](const SymBody& b) { return in_john_slice(b); };
  auto report = check_slice_axioms(membership, samples, group);
  CHECK(report.h_invariant);
  CHECK(report.disjointness_witnesses.empty());
}

TEST_CASE("equivariant extension reproduces the Loewner map") {
  std::mt19937_64 rng(50);
  SliceMap f = [](const SymBody& s) { return flatten(lowner(s).M()); };
  for (int t = 0; t < 6; ++t) {
    SymBody a = random_sym_body(2, rng);
    Eigen::VectorXd got = extend_equivariant(f, quad_form_action(), a);
    Eigen::VectorXd want = flatten(lowner(a).M());
    CHECK((got - want).norm() <= 1e-4 * (1.0 + want.norm()));
  }
}

TEST_CASE("equivariant extension restricts to the original map on the slice") {
  std::mt19937_64 rng(54);
  SliceMap f = [](const SymBody& s) { return flatten(lowner(s).M()); };
  for (int t = 0; t < 4; ++t) {
    SymBody on_slice = john_position(random_sym_body(2, rng));
    Eigen::VectorXd restricted = extend_equivariant(f, quad_form_action(), on_slice);
    Eigen::VectorXd original = f(on_slice);
    CHECK((restricted - original).norm() <= 1e-6 * (1.0 + original.norm()));
  }
}

TEST_CASE("equivariant extension: constant zero and identity targets") {
  std::mt19937_64 rng(51);
  SymBody a = random_sym_body(2, rng);

  SliceMap zero = [](const SymBody&) { return Eigen::VectorXd::Zero(2).eval(); };
  CHECK(extend_equivariant(zero, vector_action(), a).norm() == 0.0);

  // f = I into the congruence target gives P^2, the inverse John matrix.
  SliceMap ident = [](const SymBody& s) {
    return flatten(Eigen::MatrixXd::Identity(s.dim(), s.dim()));
  };
  Eigen::VectorXd got = extend_equivariant(ident, congruence_action(), a);
  Eigen::MatrixXd p = slicing_map_john(a).P();
  Eigen::VectorXd want = flatten((p * p).eval());
  CHECK((got - want).norm() <= 1e-6 * (1.0 + want.norm()));
  Eigen::VectorXd john_inv = flatten(sym_inverse(john(a).M()));
  CHECK((got - john_inv).norm() <= 1e-5 * (1.0 + john_inv.norm()));
}

TEST_CASE("equivariant extension rejects non-equivariant slice maps") {
  std::mt19937_64 rng(52);
  SymBody a = random_sym_body(2, rng);
  SliceMap bad = [](const SymBody&) { return vec2(1.0, 0.0); };  // constant nonzero
  CHECK_THROWS_AS(extend_equivariant(bad, vector_action(), a), NotEquivariantOnSlice);
}

TEST_CASE("empirical continuity of the slicing map") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> g;
  const std::vector<double> deltas{1e-2, 1e-3, 1e-4};
  int monotone = 0, total = 0;
  for (int t = 0; t < 20; ++t) {
    SymBody a = random_sym_body(2, rng);
    Eigen::MatrixXd f0 = slicing_map_john(a).P();

    // one noise pattern per body, scaled by delta
    std::vector<Eigen::VectorXd> noise;
    for (const auto& gen : a.gens()) {
      Eigen::VectorXd z(gen.size());
      for (int d = 0; d < z.size(); ++d) z[d] = g(rng);
      noise.push_back(z);
    }
    std::vector<double> errs;
    for (double delta : deltas) {
      std::vector<Eigen::VectorXd> gens = a.gens();
      for (size_t i = 0; i < gens.size(); ++i) gens[i] += delta * noise[i];
      SymBody pert(a.dim(), a.rep(), std::move(gens));
      errs.push_back((slicing_map_john(pert).P() - f0).norm());
    }
    for (size_t i = 1; i < errs.size(); ++i) {
      ++total;
      if (errs[i] <= errs[i - 1] + 1e-12) ++monotone;
    }
  }
  CHECK(double(monotone) / total >= 0.95);
}

TEST_SUITE_END();
