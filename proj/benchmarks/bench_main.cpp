#include <benchmark/benchmark.h>

#include "lci/analysis.hpp"
#include "lci/exact_lci.hpp"
#include "lci/limit_sampler.hpp"
#include "lci/lp.hpp"
#include "lci/m_functional.hpp"
#include "lci/word.hpp"

namespace {

lci::Instance uniform(std::size_t m) { return lci::Instance(lci::uniform_pmf(m), lci::uniform_pmf(m)); }

void BM_LciDp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const auto inst = uniform(m);
  const auto x = lci::sample_word(inst.px(), n, {1, 0});
  const auto y = lci::sample_word(inst.py(), n, {1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(lci::lci_length_dp(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LciDp)->Args({250, 2})->Args({500, 2})->Args({1000, 2})->Args({500, 4})->Complexity();

void BM_LciBinary(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = uniform(2);
  const auto x = lci::sample_word(inst.px(), n, {1, 0});
  const auto y = lci::sample_word(inst.py(), n, {1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(lci::lci_length_binary(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LciBinary)->Range(1 << 10, 1 << 16)->Complexity();

void BM_ClassifyCase(benchmark::State& state) {
  const lci::Instance inst(lci::validate_pmf(std::vector<lci::Rational>{{2, 3}, {1, 6}, {1, 6}}),
                           lci::validate_pmf(std::vector<lci::Rational>{{1, 6}, {2, 3}, {1, 6}}));
  for (auto _ : state) benchmark::DoNotOptimize(lci::classify_case(inst));
}
BENCHMARK(BM_ClassifyCase);

void BM_MOracle(benchmark::State& state) {
  const lci::Instance inst(lci::validate_pmf(std::vector<lci::Rational>{{2, 3}, {1, 6}, {1, 6}}),
                           lci::validate_pmf(std::vector<lci::Rational>{{1, 6}, {2, 3}, {1, 6}}));
  const auto rep = lci::classify_case(inst);
  const lci::Perturbation nu{{0.3, -0.7, 0.0}, {1.1, 0.2, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(lci::m_lp_oracle(rep, nu).value);
}
BENCHMARK(BM_MOracle);

void BM_SampleLimit(benchmark::State& state) {
  const auto rep = lci::classify_case(uniform(2));
  lci::SamplerOptions opt;
  opt.reps = 16;
  opt.path_steps = static_cast<std::size_t>(state.range(0));
  opt.grid_r = 64;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lci::sample_limit(rep, opt, {++seed, 0}).samples.data());
  state.SetItemsProcessed(state.iterations() * 16);
}
BENCHMARK(BM_SampleLimit)->Arg(1024)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
