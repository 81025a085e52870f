#include <benchmark/benchmark.h>

#include "segre/macurrent.hpp"
#include "segre/multiplicity.hpp"
#include "segre/vogel.hpp"

using namespace segre;

namespace {

MonomialIdeal x2xy() { return MonomialIdeal(2, {Exponent{2, 0}, Exponent{1, 1}}); }

MonomialIdeal x2y3() { return MonomialIdeal(2, {Exponent{2, 0}, Exponent{0, 3}}); }

PolyTuple tuple_x2xy() {
  std::vector<std::string> v{"x", "y"};
  return PolyTuple({parse_polynomial("x^2", v), parse_polynomial("x*y", v)});
}

}  // namespace

static void BM_multiplicity_sequence(benchmark::State& state) {
  MonomialIdeal J = state.range(0) == 0 ? x2xy() : x2y3();
  for (auto _ : state) {
    auto ms = multiplicity_sequence(J);
    benchmark::DoNotOptimize(ms);
  }
}
BENCHMARK(BM_multiplicity_sequence)->Arg(0)->Arg(1);

static void BM_vogel_trial(benchmark::State& state) {
  MonomialIdeal J = x2y3();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto o = vogel_at_origin(J, seed++);
    benchmark::DoNotOptimize(o);
  }
}
BENCHMARK(BM_vogel_trial);

static void BM_hessian_eval(benchmark::State& state) {
  Potential P(tuple_x2xy(), 0.01);
  PotentialEvaluator eval(P);
  std::vector<Cx> z{{0.11, 0.02}, {-0.05, 0.07}};
  Cx H[4];
  for (auto _ : state) {
    eval.hessian(z, {H, 4});
    benchmark::DoNotOptimize(H);
  }
}
BENCHMARK(BM_hessian_eval);

static void BM_ball_mass(benchmark::State& state) {
  Potential P(tuple_x2xy(), 0.01);
  QuadratureConfig cfg;
  cfg.samples_per_ball = state.range(0);
  cfg.threads = 1;
  std::vector<Cx> c{{0, 0}, {0, 0}};
  for (auto _ : state) {
    auto m = ball_mass(P, 2, c, 0.3, cfg);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_ball_mass)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
