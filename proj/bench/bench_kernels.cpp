#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <vector>

#include "dcsbm/dcsbm.hpp"

using namespace dcsbm;

namespace {

const SymMatrix& sparse_operator() {
  static const SymMatrix m = normalized_adjacency(sample_graph(eppm_params(20000), 1));
  return m;
}

const Eigen::MatrixXd& dense_operator() {
  static const Eigen::MatrixXd m = expected_model_normalized(eppm_params(3000)).to_dense();
  return m;
}

std::vector<double> points(Index n, Index d) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<double> p(static_cast<std::size_t>(n * d));
  for (auto& x : p) x = g(rng);
  return p;
}

template <bool Parallel>
void BM_csr_spmv(benchmark::State& st) {
  const auto& m = sparse_operator();
  std::vector<double> x(m.n(), 1.0), y(m.n());
  for (auto _ : st) {
    if constexpr (Parallel) kernels::csr_spmv(m.csr(), x.data(), y.data());
    else kernels::serial::csr_spmv(m.csr(), x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void BM_dense_symv(benchmark::State& st) {
  const auto& m = dense_operator();
  const Index n = m.rows();
  std::vector<double> x(n, 1.0), y(n);
  for (auto _ : st) {
    if constexpr (Parallel) kernels::dense_symv(n, m.data(), x.data(), y.data());
    else kernels::serial::dense_symv(n, m.data(), x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void BM_ball_counts(benchmark::State& st) {
  const Index n = 20000, d = 3;
  const auto p = points(n, d);
  std::vector<Index> pool(n), cand(256);
  std::iota(pool.begin(), pool.end(), 0);
  std::iota(cand.begin(), cand.end(), 0);
  std::vector<Index> counts(cand.size());
  for (auto _ : st) {
    if constexpr (Parallel) kernels::ball_counts(p.data(), d, cand, pool, 0.25, counts.data());
    else kernels::serial::ball_counts(p.data(), d, cand, pool, 0.25, counts.data());
    benchmark::DoNotOptimize(counts.data());
  }
}

template <bool Parallel>
void BM_assign_nearest(benchmark::State& st) {
  const Index n = 200000, d = 4, k = 8;
  const auto p = points(n, d);
  const std::vector<double> c(p.begin(), p.begin() + k * d);
  std::vector<int> labels(n);
  for (auto _ : st) {
    double w;
    if constexpr (Parallel) w = kernels::assign_nearest(p.data(), n, d, c.data(), k, labels.data());
    else w = kernels::serial::assign_nearest(p.data(), n, d, c.data(), k, labels.data());
    benchmark::DoNotOptimize(w);
  }
}

template <bool Parallel>
void BM_sample_pairs(benchmark::State& st) {
  const auto prm = eppm_params(4000);
  const auto agg = aggregates(prm);
  auto prob = [&](Index u, Index v) { return edge_probability(prm, agg, u, v); };
  for (auto _ : st) {
    auto e = Parallel ? kernels::sample_pairs(prm.n, 7, prob) : kernels::serial::sample_pairs(prm.n, 7, prob);
    benchmark::DoNotOptimize(e.data());
  }
}

}  // namespace

BENCHMARK(BM_csr_spmv<false>)->Name("csr_spmv/serial")->UseRealTime();
BENCHMARK(BM_csr_spmv<true>)->Name("csr_spmv/parallel")->UseRealTime();
BENCHMARK(BM_dense_symv<false>)->Name("dense_symv/serial")->UseRealTime();
BENCHMARK(BM_dense_symv<true>)->Name("dense_symv/parallel")->UseRealTime();
BENCHMARK(BM_ball_counts<false>)->Name("ball_counts/serial")->UseRealTime();
BENCHMARK(BM_ball_counts<true>)->Name("ball_counts/parallel")->UseRealTime();
BENCHMARK(BM_assign_nearest<false>)->Name("assign_nearest/serial")->UseRealTime();
BENCHMARK(BM_assign_nearest<true>)->Name("assign_nearest/parallel")->UseRealTime();
BENCHMARK(BM_sample_pairs<false>)->Name("sample_pairs/serial")->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_pairs<true>)->Name("sample_pairs/parallel")->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
