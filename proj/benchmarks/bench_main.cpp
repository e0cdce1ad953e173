#include <benchmark/benchmark.h>

#include "seqplan/domain_gen.hpp"
#include "seqplan/policies.hpp"
#include "seqplan/recognizer.hpp"
#include "seqplan/sprp.hpp"

namespace {

using namespace seqplan;

// First seed whose seven-observation hypothesis set is reasonably large.
std::uint64_t busy_seed() {
  static const std::uint64_t seed = [] {
    GenParams p;
    for (p.seed = 1;; ++p.seed) {
      const Instance inst = gen_instance(p);
      if (recognize(*inst.library, inst.observations).size() >= 100) return p.seed;
    }
  }();
  return seed;
}

Instance instance_for(std::int64_t obs_len) {
  GenParams p;
  p.seed = busy_seed();
  p.obs_len = static_cast<std::size_t>(obs_len);
  return gen_instance(p);
}

void BM_Recognize(benchmark::State& state) {
  const Instance inst = instance_for(state.range(0));
  std::size_t size = 0;
  for (auto _ : state) {
    const HypothesisSet h = recognize(*inst.library, inst.observations);
    size = h.size();
    benchmark::DoNotOptimize(size);
  }
  state.counters["hypotheses"] = static_cast<double>(size);
}
BENCHMARK(BM_Recognize)->DenseRange(3, 7)->Unit(benchmark::kMicrosecond);

void BM_MatchesAllPairs(benchmark::State& state) {
  const Instance inst = instance_for(5);
  const HypothesisSet h = recognize(*inst.library, inst.observations);
  std::vector<Plan> plans;
  for (const auto& hyp : h.hypotheses)
    for (const auto& p : hyp.plans) plans.push_back(p);
  for (auto _ : state) {
    std::size_t hits = 0;
    for (const auto& p : plans)
      for (const auto& q : plans) hits += matches(p, q);
    benchmark::DoNotOptimize(hits);
  }
  state.counters["pairs"] = static_cast<double>(plans.size() * plans.size());
}
BENCHMARK(BM_MatchesAllPairs)->Unit(benchmark::kMicrosecond);

void BM_SelectionStep(benchmark::State& state) {
  const auto kind = static_cast<PolicyKind>(state.range(0));
  const Instance inst = instance_for(7);
  const HypothesisSet h = recognize(*inst.library, inst.observations);
  for (auto _ : state) {
    PlanPool pool;
    const IndexedSet set = index_hypotheses(pool, h);
    benchmark::DoNotOptimize(select(kind, pool, set, {}, 1));
  }
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_SelectionStep)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_FullRun(benchmark::State& state) {
  const auto kind = static_cast<PolicyKind>(state.range(0));
  const Instance inst = instance_for(7);
  const HypothesisSet h = recognize(*inst.library, inst.observations);
  const QueryOracle oracle{inst.truth};
  for (auto _ : state) {
    const SprpResult r = run_sprp(*inst.library, h, oracle, Policy(kind, 3));
    benchmark::DoNotOptimize(r.trace.queries());
  }
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_FullRun)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
