#include <benchmark/benchmark.h>

#include <random>

#include "bmslice/body.hpp"
#include "bmslice/ellipsoid.hpp"
#include "bmslice/orbit.hpp"
#include "bmslice/sampling.hpp"
#include "bmslice/slicing.hpp"

using namespace bmslice;

namespace {

SymBody make_body(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_sym_body(n, rng);
}

std::vector<Eigen::VectorXd> make_points(int n, int k, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd x(n);
    for (int d = 0; d < n; ++d) x[d] = g(rng);
    pts.push_back(std::move(x));
  }
  return pts;
}

void BM_SupportVrep(benchmark::State& state) {
  SymBody a = make_body(3, 1);
  std::mt19937_64 rng(2);
  Eigen::VectorXd u = random_unit(3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(support(a, u));
}
BENCHMARK(BM_SupportVrep);

void BM_SupportHrepEnum(benchmark::State& state) {
  SymBody a = polar(make_body(3, 3));
  a.hpoly_vertices();  // warm the vertex cache
  std::mt19937_64 rng(4);
  Eigen::VectorXd u = random_unit(3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(support(a, u));
}
BENCHMARK(BM_SupportHrepEnum);

void BM_SupportHrepSimplex(benchmark::State& state) {
  SymBody a = polar(make_body(4, 5));
  std::mt19937_64 rng(6);
  Eigen::VectorXd u = random_unit(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(support(a, u));
}
BENCHMARK(BM_SupportHrepSimplex);

void BM_MveeCentered(benchmark::State& state) {
  auto pts = make_points(static_cast<int>(state.range(0)), 50, 7);
  for (auto _ : state) benchmark::DoNotOptimize(mvee_centered(pts));
}
BENCHMARK(BM_MveeCentered)->Arg(2)->Arg(3)->Arg(4);

void BM_Hausdorff(benchmark::State& state) {
  SymBody a = make_body(2, 8);
  SymBody b = make_body(2, 9);
  HausdorffOptions opt;
  opt.samples = static_cast<int>(state.range(0));
  opt.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff(a, b, opt));
}
BENCHMARK(BM_Hausdorff)->Arg(1024)->Arg(4096);

void BM_JohnPosition(benchmark::State& state) {
  SymBody a = make_body(static_cast<int>(state.range(0)), 10);
  for (auto _ : state) benchmark::DoNotOptimize(john_position(a));
}
BENCHMARK(BM_JohnPosition)->Arg(2)->Arg(3);

void BM_QuotientDistance(benchmark::State& state) {
  SymBody a = john_position(make_body(2, 11));
  SymBody b = john_position(make_body(2, 12));
  QuotientOptions opt;
  opt.assume_john_positioned = true;
  for (auto _ : state) benchmark::DoNotOptimize(quotient_distance(a, b, opt));
}
BENCHMARK(BM_QuotientDistance);

void BM_BmDistance(benchmark::State& state) {
  SymBody a = john_position(make_body(2, 13));
  SymBody b = john_position(make_body(2, 14));
  BmOptions opt;
  opt.assume_john_positioned = true;
  for (auto _ : state) benchmark::DoNotOptimize(bm_distance(a, b, opt));
}
BENCHMARK(BM_BmDistance);

}  // namespace

BENCHMARK_MAIN();
