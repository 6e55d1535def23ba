#include <benchmark/benchmark.h>

#include "cornerscat/corner_induction.hpp"
#include "cornerscat/farfield.hpp"
#include "cornerscat/hankel.hpp"
#include "cornerscat/itp.hpp"
#include "cornerscat/lame_algebra.hpp"

using namespace cornerscat;

static void BM_Hankel012(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hankel1_012(x));
    x = x < 50 ? x * 1.01 : 0.5;
  }
}
BENCHMARK(BM_Hankel012);

static void BM_LippmannSchwingerMatvec(benchmark::State& state) {
  const int cells = static_cast<int>(state.range(0));
  const LameParameters p(-0.9, 1.0);
  const ScattererGrid g = ScattererGrid::rectangle(37.6, 37.6 * 0.7, cells, 0.5);
  SolverOptions o;
  o.dense_threshold = 0;
  const LippmannSchwinger ls(g, p, 0.9, o);
  const Eigen::VectorXcd v = Eigen::VectorXcd::Random(static_cast<Eigen::Index>(ls.unknowns()));
  for (auto _ : state) benchmark::DoNotOptimize(ls.apply(v));
  state.SetLabel(std::to_string(ls.unknowns()) + " unknowns");
}
BENCHMARK(BM_LippmannSchwingerMatvec)->Arg(48)->Arg(96)->Unit(benchmark::kMicrosecond);

static void BM_ItpSigmaMin(benchmark::State& state) {
  ShapeDescriptor s;
  s.kind = ShapeKind::Rectangle;
  s.width = 37.6;
  s.height = 37.6 * 0.7;
  const ItpDiscretization d(s, static_cast<int>(state.range(0)), LameParameters(-0.9, 1.0), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(d.sigma_min(0.93));
}
BENCHMARK(BM_ItpSigmaMin)->Arg(25)->Arg(49)->Unit(benchmark::kMillisecond);

static void BM_CertifyOrder(benchmark::State& state) {
  const algebra::RationalLame lame(mpq_class(1, 3), mpq_class(2, 5));
  for (auto _ : state)
    benchmark::DoNotOptimize(induction::certify_order(static_cast<int>(state.range(0)), lame.a(), lame.b()));
}
BENCHMARK(BM_CertifyOrder)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_AssembleFarField(benchmark::State& state) {
  const LameParameters p(1.0, 1.0);
  const ScattererGrid g = ScattererGrid::disk(1.0, 24, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_F(g, p, 2.0, 16));
}
BENCHMARK(BM_AssembleFarField)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
