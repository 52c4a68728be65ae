// SPDX-License-Identifier: Apache-2.0
// Microbenchmarks for the hot paths: eigendecomposition, heat kernel and
// wavelet application, all-pairs distances, and the centrality pipeline.
#include <benchmark/benchmark.h>

#include <random>

#include "hgw/hgw.hpp"

namespace {

/// Connected weighted graph: spanning tree plus n random extra edges,
/// mirroring the shapes the verification sweeps run on.
hgw::Graph make_graph(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  hgw::Graph g;
  g.labels.reserve(n);
  for (int i = 0; i < n; ++i) g.labels.push_back("v" + std::to_string(i));
  g.weights = Eigen::MatrixXd::Zero(n, n);
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    const int u = parent(rng);
    const double w = weight(rng);
    g.weights(u, v) = g.weights(v, u) = w;
  }
  std::uniform_int_distribution<int> any(0, n - 1);
  for (int extra = 0; extra < n; ++extra) {
    const int u = any(rng), v = any(rng);
    if (u == v) continue;
    const double w = weight(rng);
    g.weights(u, v) = g.weights(v, u) = w;
  }
  return g;
}

void bm_eigendecompose(benchmark::State& state) {
  hgw::Graph g = make_graph(static_cast<int>(state.range(0)), 1);
  Eigen::MatrixXd L = hgw::laplacian(g);
  for (auto _ : state)
    benchmark::DoNotOptimize(hgw::eigendecompose(L).eigenvalues.sum());
}
BENCHMARK(bm_eigendecompose)->Arg(50)->Arg(200)->Arg(500);

void bm_heat_kernel(benchmark::State& state) {
  hgw::Graph g = make_graph(static_cast<int>(state.range(0)), 2);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  for (auto _ : state)
    benchmark::DoNotOptimize(hgw::heat_kernel(d, 0.7).sum());
}
BENCHMARK(bm_heat_kernel)->Arg(50)->Arg(200)->Arg(500);

void bm_wavelet_operator(benchmark::State& state) {
  hgw::Graph g = make_graph(static_cast<int>(state.range(0)), 3);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  for (auto _ : state)
    benchmark::DoNotOptimize(hgw::wavelet_operator(d, 0.7).sum());
}
BENCHMARK(bm_wavelet_operator)->Arg(50)->Arg(200)->Arg(500);

void bm_transform(benchmark::State& state) {
  hgw::Graph g = make_graph(static_cast<int>(state.range(0)), 4);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  auto scales = hgw::default_scales(d.lambda_1(), d.lambda_max(), 9);
  Eigen::VectorXd f = d.eigenvectors.col(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(hgw::transform(d, scales, f).sum());
}
BENCHMARK(bm_transform)->Arg(50)->Arg(200)->Arg(500);

void bm_all_pairs_distances(benchmark::State& state) {
  hgw::Graph g = make_graph(static_cast<int>(state.range(0)), 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(hgw::intrinsic_metric(g).dist.sum());
}
BENCHMARK(bm_all_pairs_distances)->Arg(50)->Arg(200)->Arg(500);

void bm_mdt_closed_form(benchmark::State& state) {
  hgw::Graph g = make_graph(static_cast<int>(state.range(0)), 6);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  for (auto _ : state)
    benchmark::DoNotOptimize(hgw::mdt_closed_form(d).sum());
}
BENCHMARK(bm_mdt_closed_form)->Arg(50)->Arg(200)->Arg(500);

void bm_mdt_quadrature(benchmark::State& state) {
  hgw::Graph g = make_graph(static_cast<int>(state.range(0)), 7);
  hgw::SpectralDecomposition d = hgw::eigendecompose(hgw::laplacian(g));
  for (auto _ : state)
    benchmark::DoNotOptimize(hgw::mdt_numeric_all(d).sum());
}
BENCHMARK(bm_mdt_quadrature)->Arg(20)->Arg(50);

void bm_select_leader(benchmark::State& state) {
  hgw::Graph g = make_graph(static_cast<int>(state.range(0)), 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(hgw::select_leader(g).leader.size());
}
BENCHMARK(bm_select_leader)->Arg(50)->Arg(200);

void bm_localization_sweep(benchmark::State& state) {
  hgw::Graph g = make_graph(static_cast<int>(state.range(0)), 9);
  hgw::IntrinsicMetric m = hgw::intrinsic_metric(g);
  for (auto _ : state) {
    auto report = hgw::verify_localization(g, m, hgw::BoundTarget::heat);
    benchmark::DoNotOptimize(report.samples.size());
  }
}
BENCHMARK(bm_localization_sweep)->Arg(20)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
