// Serial vs OpenMP timings for the data-parallel kernels. The second
// benchmark argument selects the backend: 0 = serial, 1 = openmp.
#include <benchmark/benchmark.h>

#include <random>

#include "qaxiom/flux/flux.hpp"
#include "qaxiom/spectra/spectra.hpp"

namespace {

using qaxiom::Backend;

Backend backend_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Backend::serial : Backend::openmp;
}

void BM_LoopIntegral(benchmark::State& state) {
  const auto path = qaxiom::flux::LoopPath::circle(1.5, state.range(0));
  const qaxiom::flux::GaugeField g(qaxiom::GaugeKind::symmetric, 1.0);
  const Backend b = backend_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(qaxiom::flux::loop_integral(path, g, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LoopIntegral)->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}});

void BM_Plaquette(benchmark::State& state) {
  const qaxiom::flux::GaugeField g(qaxiom::GaugeKind::landau, 0.7);
  const Backend b = backend_of(state);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qaxiom::flux::plaquette_phase(n, 0.1, g, 1.0, b));
  state.SetItemsProcessed(state.iterations() * (n - 1) * (n - 1));
}
BENCHMARK(BM_Plaquette)->ArgsProduct({{256, 1024}, {0, 1}});

void BM_UncertaintyMoments(benchmark::State& state) {
  const Eigen::Index dim = 256;
  const Eigen::Index states = state.range(0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  auto random_matrix = [&] {
    qaxiom::repr::Matrix m(dim, states);
    for (Eigen::Index j = 0; j < states; ++j)
      for (Eigen::Index i = 0; i < dim; ++i) m(i, j) = {n01(rng), n01(rng)};
    return m;
  };
  qaxiom::repr::Matrix psi = random_matrix();
  psi.colwise().normalize();
  const qaxiom::repr::Matrix a_psi = random_matrix();
  const qaxiom::repr::Matrix b_psi = random_matrix();
  const Backend b = backend_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(qaxiom::spectra::uncertainty_moments(psi, a_psi, b_psi, b));
  state.SetItemsProcessed(state.iterations() * states);
}
BENCHMARK(BM_UncertaintyMoments)->ArgsProduct({{64, 1024}, {0, 1}});

void BM_LimitScan(benchmark::State& state) {
  std::vector<double> values;
  for (int k = 0; k < state.range(0); ++k) values.push_back(1.0 / (1 + k));
  qaxiom::spectra::ScanContext ctx;
  ctx.ntrunc = 48;
  const Backend b = backend_of(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(qaxiom::spectra::limit_scan(qaxiom::spectra::ScanQuantity::uncertainty_product,
                                                         "B", values, ctx, b));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LimitScan)->ArgsProduct({{8}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
