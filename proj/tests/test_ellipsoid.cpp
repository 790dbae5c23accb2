#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "bmslice/body.hpp"
#include "bmslice/ellipsoid.hpp"
#include "bmslice/linalg.hpp"
#include "bmslice/sampling.hpp"
#include "bmslice/slicing.hpp"

using namespace bmslice;

namespace {

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

std::vector<Eigen::VectorXd> gaussian_points(int n, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd x(n);
    for (int d = 0; d < n; ++d) x[d] = g(rng);
    pts.push_back(std::move(x));
  }
  return pts;
}

// V-polytope inscribed in the ellipse with semi-axes (a, b).
SymBody ellipse_body(double a, double b, int m) {
  std::vector<Eigen::VectorXd> gens;
  for (int j = 0; j < m; ++j) {
    double th = std::numbers::pi * j / m;
    gens.push_back(vec2(a * std::cos(th), b * std::sin(th)));
  }
  return SymBody(2, Rep::V, std::move(gens));
}

}  // namespace

TEST_SUITE_BEGIN("ellipsoid");

TEST_CASE("Ellipsoid validation") {
  CHECK_THROWS_AS(Ellipsoid(Eigen::MatrixXd::Zero(2, 2)), Error);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, -0.5, 1;
  CHECK_THROWS_AS(Ellipsoid{asym}, Error);
  Ellipsoid ball = Ellipsoid::unit_ball(3);
  CHECK(ball.support(Eigen::VectorXd::Unit(3, 0)) == doctest::Approx(1.0));
}

TEST_CASE("mvee on symmetric axis points gives the unit disk") {
  auto rep = mvee_centered({vec2(1, 0), vec2(0, 1)});
  CHECK((rep.ellipsoid.M() - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-9);
  CHECK(rep.weights.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.weights.minCoeff() >= 0.0);
}

TEST_CASE("mvee on the square's vertices gives the sqrt2 disk") {
  auto rep = mvee_centered({vec2(1, 1), vec2(1, -1)});
  CHECK((rep.ellipsoid.M() - 0.5 * Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-9);
}

TEST_CASE("mvee on random points: containment and KKT") {
  std::mt19937_64 rng(31);
  auto pts = gaussian_points(3, 50, rng);
  auto rep = mvee_centered(pts, {1e-7, 0, false});
  const int n = 3;

  for (const auto& x : pts) CHECK(x.dot(rep.ellipsoid.M() * x) <= 1.0 + 1e-12);
  CHECK(rep.epsilon <= 1e-7);

  // KKT: kappa_i = x^T Lambda(p)^-1 x equals n on the weight support.
  Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(n, n);
  for (size_t i = 0; i < pts.size(); ++i)
    lambda += rep.weights[i] * pts[i] * pts[i].transpose();
  Eigen::MatrixXd linv = lambda.inverse();
  for (size_t i = 0; i < pts.size(); ++i) {
    double kappa = pts[i].dot(linv * pts[i]);
    CHECK(kappa <= n * (1 + 2e-7));
    if (rep.weights[i] > 1e-8) CHECK(kappa >= n * (1 - 2e-7));
  }

  // log det within n*log(1+eps) of the KKT optimum is implied by the
  // two-sided kappa bound; sanity-check the normalization identity
  // sum_i p_i kappa_i = n.
  double acc = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) acc += rep.weights[i] * pts[i].dot(linv * pts[i]);
  CHECK(acc == doctest::Approx(double(n)).epsilon(1e-9));
}

TEST_CASE("solver objective is nondecreasing") {
  std::mt19937_64 rng(32);
  auto pts = gaussian_points(2, 40, rng);
  MveeOptions opt;
  opt.trace_objective = true;
  auto rep = mvee_centered(pts, opt);
  REQUIRE(rep.objective_trace.size() >= 2);
  for (size_t i = 1; i < rep.objective_trace.size(); ++i)
    CHECK(rep.objective_trace[i] >= rep.objective_trace[i - 1] - 1e-12);
}

TEST_CASE("mvee error paths") {
  std::mt19937_64 rng(33);
  // rank-deficient points
  CHECK_THROWS_AS(mvee_centered({vec2(1, 0), vec2(2, 0), vec2(-1, 0)}), NotFullDimensional);
  // iteration budget
  auto pts = gaussian_points(3, 60, rng);
  MveeOptions opt;
  opt.max_iters = 2;
  try {
    mvee_centered(pts, opt);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(e.iterations >= 2);
    CHECK(e.weights.size() == 60);
    CHECK(e.achieved_epsilon > 0.0);
  }
  CHECK_THROWS_AS(mvee_centered(pts, {0.5, 0, false}), Error);  // eps out of range
}

TEST_CASE("lowner desk values") {
  CHECK((lowner(square_body()).M() - 0.5 * Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-8);
  CHECK((lowner(cross_polytope2d()).M() - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-8);
}

TEST_CASE("john desk values") {
  CHECK((john(square_body()).M() - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-8);
  CHECK((john(cross_polytope2d()).M() - 2.0 * Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-8);
}

TEST_CASE("ellipsoid bodies are their own John and Loewner ellipsoids") {
  SymBody e = ellipse_body(2.0, 1.0, 512);
  Eigen::MatrixXd expect(2, 2);
  expect << 0.25, 0, 0, 1;
  CHECK((lowner(e).M() - expect).norm() <= 1e-3);
  CHECK((john(e).M() - expect).norm() <= 1e-3);
}

TEST_CASE("john equivariance under random linear maps") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 10; ++t) {
    int n = 2 + t % 2;
    SymBody a = random_sym_body(n, rng);
    Eigen::MatrixXd g = random_gl(n, rng, 1.0);
    Eigen::MatrixXd gi = g.inverse();
    Eigen::MatrixXd expected = gi.transpose() * john(a).M() * gi;
    Eigen::MatrixXd got = john(act(GroupElem(g), a)).M();
    CHECK((got - expected).norm() / expected.norm() <= 1e-6);
  }
}

TEST_CASE("sandwich j(A) inside A inside l(A) on sampled directions") {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 6; ++t) {
    SymBody a = random_sym_body(2 + t % 2, rng);
    Ellipsoid j = john(a), l = lowner(a);
    for (int s = 0; s < 64; ++s) {
      Eigen::VectorXd u = random_unit(a.dim(), rng);
      double h = support(a, u);
      CHECK(j.support(u) <= h * (1 + 1e-6) + 1e-9);
      CHECK(l.support(u) >= h * (1 - 1e-6) - 1e-9);
    }
  }
}

TEST_CASE("john and lowner are polar duals") {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 8; ++t) {
    SymBody a = random_sym_body(2, rng);
    Eigen::MatrixXd lhs = john(polar(a)).M();
    Eigen::MatrixXd rhs = sym_inverse(lowner(a).M());
    CHECK((lhs - rhs).norm() / rhs.norm() <= 1e-6);
  }
}

TEST_CASE("john position is idempotent at the ellipsoid level") {
  std::mt19937_64 rng(37);
  SymBody a = random_sym_body(2, rng);
  SymBody positioned = john_position(a);
  CHECK((john(positioned).M() - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-6);
}

TEST_CASE("n = 1 ellipsoids through the full reduction chain") {
  Eigen::VectorXd g(1);
  g << 2.0;
  SymBody seg(1, Rep::V, {g});  // [-2, 2]: its own John and Loewner ellipsoid
  CHECK(john(seg).M()(0, 0) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(lowner(seg).M()(0, 0) == doctest::Approx(0.25).epsilon(1e-9));

  // multiple collinear points: all weight jumps to the farthest one
  Eigen::VectorXd a(1), b(1);
  a << 1.0;
  b << 2.0;
  auto rep = mvee_centered({a, b});
  CHECK(rep.ellipsoid.M()(0, 0) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(rep.weights[1] == doctest::Approx(1.0));
}

TEST_CASE("containment bounds") {
  auto sq = containment_bounds(square_body());
  CHECK(sq.outer_factor == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));

  auto disk = containment_bounds(ball_body(2, 512));
  CHECK(disk.outer_factor == doctest::Approx(1.0).epsilon(1e-4));

  std::mt19937_64 rng(38);
  for (int t = 0; t < 5; ++t) {
    SymBody a = john_position(random_sym_body(3, rng));
    auto b = containment_bounds(a);
    CHECK(b.outer_factor <= std::sqrt(3.0) + 1e-6);
  }
}

TEST_SUITE_END();
