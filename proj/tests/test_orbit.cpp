#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "bmslice/body.hpp"
#include "bmslice/orbit.hpp"
#include "bmslice/sampling.hpp"
#include "bmslice/slicing.hpp"

using namespace bmslice;

namespace {

QuotientOptions fast_quotient() {
  QuotientOptions opt;
  opt.angle_steps = 1024;
  return opt;
}

}  // namespace

TEST_SUITE_BEGIN("orbit");

TEST_CASE("OrbitPoint validates John position") {
  std::mt19937_64 rng(71);
  SymBody a = random_sym_body(2, rng);
  CHECK_THROWS_AS(OrbitPoint(act(GroupElem(3.0 * Eigen::MatrixXd::Identity(2, 2)), a)),
                  Error);
  OrbitPoint ok(john_position(a));
  CHECK(ok.rep().dim() == 2);
}

TEST_CASE("quotient distance desk values") {
  std::mt19937_64 rng(72);
  SymBody a = random_sym_body(2, rng);
  CHECK(quotient_distance(a, a, fast_quotient()) <= 1e-8);

  SymBody sq = square_body();
  SymBody rot = act(GroupElem::rotation2d(0.37), sq);
  CHECK(quotient_distance(sq, rot, fast_quotient()) <= 1e-6);

  SymBody disk = ball_body(2, 2048);
  double d = quotient_distance(sq, disk);
  CHECK(d == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-4));
}

TEST_CASE("quotient distance in n=3") {
  std::mt19937_64 rng(73);
  SymBody a = random_sym_body(3, rng);
  QuotientOptions opt;
  opt.dir_samples = 512;
  opt.restarts = 24;
  CHECK(quotient_distance(a, a, opt) <= 1e-6);
  SymBody moved = act(GroupElem(random_gl(3, rng, 0.8)), a);
  CHECK(quotient_distance(a, moved, opt) <= 5e-4);
}

TEST_CASE("quotient distance is a pseudometric on samples") {
  std::mt19937_64 rng(74);
  QuotientOptions opt;  // default metric settings
  for (int t = 0; t < 3; ++t) {
    SymBody a = random_sym_body(2, rng);
    SymBody b = random_sym_body(2, rng);
    SymBody c = random_sym_body(2, rng);
    double ab = quotient_distance(a, b, opt), ba = quotient_distance(b, a, opt);
    double bc = quotient_distance(b, c, opt), ac = quotient_distance(a, c, opt);
    CHECK(ab >= 0.0);
    CHECK(std::abs(ab - ba) <= 5e-5);
    CHECK(ac <= ab + bc + 1e-4);
  }
}

TEST_CASE("quotient distance is GL-invariant") {
  std::mt19937_64 rng(75);
  QuotientOptions opt;  // default metric settings
  for (int t = 0; t < 4; ++t) {
    SymBody a = random_sym_body(2, rng);
    SymBody b = random_sym_body(2, rng);
    GroupElem g(random_gl(2, rng, 1.0));
    double d1 = quotient_distance(a, b, opt);
    double d2 = quotient_distance(act(g, a), b, opt);
    CHECK(std::abs(d1 - d2) <= 1e-4);
  }
}

TEST_CASE("gl orbit oracle desk values") {
  std::mt19937_64 rng(76);
  SymBody a = random_sym_body(2, rng);
  GlOracleOptions opt;
  CHECK(gl_orbit_distance_oracle(a, a, opt) <= 1e-6);

  SymBody disk = ball_body(2, 512);
  CHECK(gl_orbit_distance_oracle(square_body(), disk, opt) > 0.1);
}

TEST_CASE("gl orbit oracle recovers planted transforms") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 3; ++t) {
    SymBody a = random_sym_body(2, rng);
    Eigen::MatrixXd g = random_gl(2, rng, 1.0);  // inside the oracle's grid range
    SymBody b = act(GroupElem(g), a);
    CHECK(gl_orbit_distance_oracle(a, b) <= 1e-3);
  }
}

TEST_CASE("zero sets of quotient distance and oracle agree on samples") {
  std::mt19937_64 rng(78);
  auto opt = fast_quotient();
  for (int t = 0; t < 3; ++t) {
    SymBody a = random_sym_body(2, rng);
    SymBody planted = act(GroupElem(random_gl(2, rng, 1.0)), a);
    SymBody other = random_sym_body(2, rng);

    double dq_same = quotient_distance(a, planted, opt);
    double dq_diff = quotient_distance(a, other, opt);
    double go_same = gl_orbit_distance_oracle(a, planted);
    double go_diff = gl_orbit_distance_oracle(a, other);
    CHECK(dq_same <= 1e-4);
    CHECK(go_same <= 1e-3);
    CHECK((dq_diff <= 1e-4) == (go_diff <= 1e-3));
  }
}

TEST_CASE("bm distance desk values") {
  std::mt19937_64 rng(79);
  SymBody a = random_sym_body(2, rng);
  CHECK(bm_distance(a, a) == 1.0);

  SymBody disk = ball_body(2, 1024);
  CHECK(bm_distance(square_body(), disk) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("bm distance is scale-invariant via John positioning") {
  std::mt19937_64 rng(80);
  SymBody a = random_sym_body(2, rng);
  SymBody scaled = act(GroupElem(2.0 * Eigen::MatrixXd::Identity(2, 2)), a);
  CHECK(bm_distance(a, scaled) == 1.0);
}

TEST_CASE("bm distance obeys the sqrt-n ball bound and the diameter bound") {
  std::mt19937_64 rng(81);
  SymBody ball_pos = john_position(ball_body(2, 1024));
  BmOptions opt;
  opt.angle_steps = 1024;
  opt.assume_john_positioned = true;
  std::vector<SymBody> corpus;
  for (int t = 0; t < 8; ++t) corpus.push_back(john_position(random_sym_body(2, rng)));
  for (const auto& a : corpus) {
    CHECK(bm_distance(a, ball_pos, opt) <= std::sqrt(2.0) + 1e-3);
    for (const auto& b : corpus) CHECK(bm_distance(a, b, opt) <= 2.0 * (1.0 + 1e-3));
  }
}

TEST_CASE("cross sections are constant on orbits") {
  std::mt19937_64 rng(82);
  SymBody a = random_sym_body(2, rng);
  std::vector<SymBody> orbit{a, act(GroupElem(random_gl(2, rng, 1.0)), a),
                             act(GroupElem(random_gl(2, rng, 1.0)), a)};
  auto entries = cross_section_from_slice(orbit);
  REQUIRE(entries.size() == 3);
  for (size_t i = 1; i < entries.size(); ++i) {
    double d = hausdorff(entries[0].point.rep(), entries[i].point.rep(), 1024);
    CHECK(d <= 1e-5);
  }
}

TEST_CASE("cross section of the ball is the ball") {
  SymBody disk = ball_body(2, 512);
  auto entries = cross_section_from_slice({disk});
  REQUIRE(entries.size() == 1);
  CHECK(hausdorff(entries[0].point.rep(), disk, 1024) <= 1e-4);
  CHECK(entries[0].gauge_ambiguous);  // every direction ties
}

TEST_CASE("square and diamond share a representative") {
  SymBody sq = square_body();
  SymBody diamond = act(GroupElem::rotation2d(std::numbers::pi / 4), sq);
  auto entries = cross_section_from_slice({sq, diamond});
  double d = hausdorff(entries[0].point.rep(), entries[1].point.rep(), 1024);
  CHECK(d <= 1e-5);
}

TEST_CASE("cross section in n=3 is orbit-invariant") {
  std::mt19937_64 rng(83);
  SymBody a = random_sym_body(3, rng);
  std::vector<SymBody> orbit{a, act(GroupElem(random_gl(3, rng, 0.7)), a)};
  auto entries = cross_section_from_slice(orbit);
  HausdorffOptions h;
  h.samples = 2048;
  double d = hausdorff(entries[0].point.rep(), entries[1].point.rep(), h);
  CHECK(d <= 1e-4);
}

TEST_CASE("greedy net covers and shrinks with eps") {
  std::mt19937_64 rng(84);
  std::vector<SymBody> samples;
  for (int i = 0; i < 60; ++i) samples.push_back(john_position(random_sym_body(2, rng)));

  NetReport net = slice_net(samples, 0.3);
  CHECK(net.coverage_fraction == 1.0);
  CHECK(!net.centers.empty());

  NetReport wide = slice_net(samples, std::sqrt(2.0));
  CHECK(wide.centers.size() == 1);  // diameter of J(2) is below sqrt(2)

  size_t prev = samples.size() + 1;
  for (double eps : {0.08, 0.15, 0.3, 0.6}) {
    NetReport r = slice_net(samples, eps);
    CHECK(r.coverage_fraction == 1.0);
    CHECK(r.centers.size() <= prev);
    prev = r.centers.size();
  }
}

TEST_CASE("net of a single ball has one center") {
  NetReport r = slice_net({john_position(ball_body(2, 512))}, 0.05);
  CHECK(r.centers.size() == 1);
  CHECK(r.coverage_fraction == 1.0);
}

TEST_SUITE_END();
