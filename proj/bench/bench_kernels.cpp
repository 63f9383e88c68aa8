#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "octoslice/domains.hpp"
#include "octoslice/golden.hpp"
#include "octoslice/kernels.hpp"

using namespace octoslice;

namespace {

std::vector<Octonion> points(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Octonion> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Octonion::Coeffs c{};
    for (double& v : c) v = u(rng);
    out.emplace_back(c);
  }
  return out;
}

kernels::Exec mode(const benchmark::State& st) {
  return st.range(1) ? kernels::Exec::parallel : kernels::Exec::serial;
}

void BM_Membership(benchmark::State& st) {
  const auto pts = points(static_cast<std::size_t>(st.range(0)));
  const Domain chain(BallChain{});
  for (auto _ : st) benchmark::DoNotOptimize(kernels::membership(chain, pts, mode(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_Evaluate(benchmark::State& st) {
  const auto pts = points(static_cast<std::size_t>(st.range(0)));
  auto f = [](const Octonion& x) { return (x * x) * x; };
  for (auto _ : st) benchmark::DoNotOptimize(kernels::evaluate(f, pts, mode(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_ResidualNorms(benchmark::State& st) {
  const auto pts = points(static_cast<std::size_t>(st.range(0)));
  const OctField g = gaussian_field().field;
  auto residual = [&g](const Octonion& x) { return slice_fueter(g, x); };
  for (auto _ : st) benchmark::DoNotOptimize(kernels::residual_norms(residual, pts, mode(st)));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void modes(benchmark::internal::Benchmark* b) {
  for (long n : {1L << 10, 1L << 14})
    for (long par : {0L, 1L}) b->Args({n, par});
  b->ArgNames({"n", "parallel"});
}

}  // namespace

BENCHMARK(BM_Membership)->Apply(modes);
BENCHMARK(BM_Evaluate)->Apply(modes);
BENCHMARK(BM_ResidualNorms)->Apply(modes);

BENCHMARK_MAIN();
