#include <benchmark/benchmark.h>

#include <netoco/generators.hpp>
#include <netoco/lpc.hpp>
#include <netoco/qp.hpp>
#include <netoco/solver.hpp>

using namespace netoco;

namespace {

Instance bench_instance(int V, int H, int n) {
  return random_instance(cycle_graph(V), H, n, {1.0, 2.0, 0.25, 0.125}, 7, {.center_spread = 1.5});
}

void BM_LocalPsi(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  Instance inst = bench_instance(32, 16, 2);
  LocalWindow w = local_window(inst.network(), 2, 0, k, r);
  LocalBoundary b = lpc_boundary(inst, w, inst.x0());
  for (auto _ : state) benchmark::DoNotOptimize(local_psi(inst, w, b));
  state.counters["vars"] = static_cast<double>(w.free_slots.size() * 2);
}
BENCHMARK(BM_LocalPsi)->Args({2, 1})->Args({4, 2})->Args({6, 3})->Args({8, 4});

void BM_LpcRun(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<int>(state.range(0)), 12, 1);
  for (auto _ : state) benchmark::DoNotOptimize(lpc_run(inst, {3, 2, {}, 1}));
}
BENCHMARK(BM_LpcRun)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_OfflineOpt(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<int>(state.range(0)), 12, 2);
  for (auto _ : state) benchmark::DoNotOptimize(offline_opt(inst));
}
BENCHMARK(BM_OfflineOpt)->Arg(8)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_OfflineProjectedGradient(benchmark::State& state) {
  Instance inst = bench_instance(static_cast<int>(state.range(0)), 12, 2);
  SolverSettings s{Backend::ProjectedGradient, 1e-9, 400000};
  for (auto _ : state) benchmark::DoNotOptimize(offline_opt(inst, s));
}
BENCHMARK(BM_OfflineProjectedGradient)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_BoxQpChain(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < m; ++i) {
    trip.emplace_back(i, i, 2.5);
    if (i + 1 < m) {
      trip.emplace_back(i, i + 1, -1.0);
      trip.emplace_back(i + 1, i, -1.0);
    }
  }
  BoxQp qp;
  qp.Q.resize(m, m);
  qp.Q.setFromTriplets(trip.begin(), trip.end());
  qp.q = Eigen::VectorXd::LinSpaced(m, -3.0, 3.0);
  qp.lower = Eigen::VectorXd::Constant(m, -0.5);
  qp.upper = Eigen::VectorXd::Constant(m, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(solve_box_qp(qp, {}));
}
BENCHMARK(BM_BoxQpChain)->Arg(64)->Arg(512)->Arg(4096);

}  // namespace
BENCHMARK_MAIN();
