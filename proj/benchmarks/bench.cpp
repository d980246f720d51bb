#include <benchmark/benchmark.h>

#include "cpt/ci.hpp"
#include "cpt/modular.hpp"
#include "cpt/oracle.hpp"
#include "cpt/poset.hpp"

namespace {

cpt::Poset fence4() {
  return cpt::Poset::from_pairs({"1", "2", "3", "4"},
                                {{"1", "2"}, {"3", "2"}, {"3", "4"}});
}

void BM_TransitiveOrientationsK7(benchmark::State& state) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> edges;
  for (char c = 'a'; c <= 'g'; ++c) names.emplace_back(1, c);
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = i + 1; j < names.size(); ++j) edges.push_back({names[i], names[j]});
  cpt::CompGraph g = cpt::CompGraph::from_edges(names, edges);
  for (auto _ : state) benchmark::DoNotOptimize(cpt::transitive_orientations(g));
}
BENCHMARK(BM_TransitiveOrientationsK7);

void BM_CiRecognizeFence(benchmark::State& state) {
  cpt::Poset p = fence4();
  for (auto _ : state) benchmark::DoNotOptimize(cpt::ci_recognize(p));
}
BENCHMARK(BM_CiRecognizeFence);

void BM_BruteForceModelFence(benchmark::State& state) {
  cpt::Poset p = fence4();
  for (auto _ : state) benchmark::DoNotOptimize(cpt::brute_force_cpt(p));
}
BENCHMARK(BM_BruteForceModelFence);

void BM_EnumeratePosets(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(cpt::enumerate_posets(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumeratePosets)->Arg(5)->Arg(6);

void BM_EnumerateTrees(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(cpt::enumerate_trees(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateTrees)->Arg(10)->Arg(14);

void BM_StrongModules(benchmark::State& state) {
  cpt::Poset p = cpt::substitute(fence4(), "3", cpt::Poset::chain({"u", "v", "w"}));
  for (auto _ : state) benchmark::DoNotOptimize(cpt::strong_modules(p));
}
BENCHMARK(BM_StrongModules);

}  // namespace

BENCHMARK_MAIN();
