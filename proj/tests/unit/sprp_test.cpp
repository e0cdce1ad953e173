#include <gtest/gtest.h>

#include "seqplan/errors.hpp"
#include "seqplan/fixtures.hpp"
#include "seqplan/harness.hpp"
#include "seqplan/policies.hpp"
#include "seqplan/sprp.hpp"

namespace seqplan {
namespace {

Selector scripted(std::vector<Plan> queries, PolicyKind then = PolicyKind::random) {
  return [queries = std::move(queries), then](PlanPool& pool, const IndexedSet& set,
                                               const ClosedSet& closed, std::size_t step) {
    if (step < queries.size()) return pool.intern(queries[step]);
    return select(then, pool, set, closed, step);
  };
}

TEST(Sprp, SingletonNeedsNoQueries) {
  const Fig2Fixture f = builtin_fig2();
  HypothesisSet one;
  one.hypotheses = {f.hypotheses.hypotheses[0]};
  one.hypotheses[0].weight = 1.0;
  const SprpResult r = run_sprp(*f.library, one, QueryOracle{f.truth}, Policy(PolicyKind::mpp, 1));
  EXPECT_EQ(r.trace.queries(), 0u);
  EXPECT_TRUE(same_hypotheses(r.final_set, one));
  EXPECT_EQ(r.trace.remaining_fraction(), std::vector<double>{1.0});
}

TEST(Sprp, ScriptedWalkthrough) {
  const Fig2Fixture f = builtin_fig2();
  const SprpResult r =
      run_sprp(*f.library, f.hypotheses, QueryOracle{f.truth}, scripted({f.p1}));
  ASSERT_GE(r.trace.steps.size(), 1u);
  EXPECT_TRUE(r.trace.steps[0].answer);
  EXPECT_EQ(r.trace.steps[0].size_after, 3u);
  EXPECT_TRUE(same_hypotheses(r.final_set, brute_force_final_set(f.hypotheses, f.truth)));
}

TEST(Sprp, FinalSetEqualsBruteForceOnFig2) {
  const Fig2Fixture f = builtin_fig2();
  for (bool strict : {false, true}) {
    const RelationOptions rel{strict};
    const HypothesisSet expected = brute_force_final_set(f.hypotheses, f.truth, rel);
    EXPECT_EQ(expected.size(), strict ? 1u : 2u);
    for (PolicyKind k : kAllPolicies)
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const SprpResult r =
            run_sprp(*f.library, f.hypotheses, QueryOracle{f.truth, rel}, Policy(k, seed), rel);
        EXPECT_TRUE(same_hypotheses(r.final_set, expected)) << to_string(k) << " " << seed;
        EXPECT_LE(r.trace.queries(), r.distinct_plans);
      }
  }
}

TEST(Sprp, TruthInsideH0IsKept) {
  const Fig2Fixture f = builtin_fig2();
  const Hypothesis h1 = f.hypotheses.hypotheses[0];
  const HypothesisSet kept = brute_force_final_set(f.hypotheses, h1);
  bool found = false;
  for (const auto& h : kept.hypotheses) found |= hypothesis_key(h) == hypothesis_key(h1);
  EXPECT_TRUE(found);
}

TEST(Sprp, UnrelatedTruthIsInconsistent) {
  const Fig2Fixture f = builtin_fig2();
  const PlanLibrary& lib = *f.library;
  const Plan z = apply_method(lib, Plan(lib, lib.action("Z")), {}, lib.method_id("z-w"));
  const Hypothesis unrelated{{z}, 1.0};
  EXPECT_TRUE(brute_force_final_set(f.hypotheses, unrelated).empty());
  // P1 is the only candidate, so the first "no" empties the set.
  HypothesisSet h0;
  h0.hypotheses = {Hypothesis{{f.p1}, 0.5}, Hypothesis{{f.p1, f.p1}, 0.5}};
  for (PolicyKind k : kAllPolicies)
    EXPECT_THROW(run_sprp(lib, h0, QueryOracle{unrelated}, Policy(k, 3)), InconsistentOracle);
}

TEST(Sprp, QueryingAPlanOfTheTruthAnswersYes) {
  const Fig2Fixture f = builtin_fig2();
  for (const Plan& p : f.truth.plans) EXPECT_TRUE(query_answer(QueryOracle{f.truth}, p));
}

TEST(Sprp, RejectsClosedOrForeignChoices) {
  const Fig2Fixture f = builtin_fig2();
  const PlanLibrary& lib = *f.library;
  EXPECT_THROW(run_sprp(lib, f.hypotheses, QueryOracle{f.truth}, scripted({f.p1, f.p1})),
               PolicyContractViolation);
  EXPECT_THROW(run_sprp(lib, f.hypotheses, QueryOracle{f.truth}, scripted({f.q})),
               PolicyContractViolation);
  HypothesisSet truncated = f.hypotheses;
  truncated.truncated = true;
  EXPECT_THROW(run_sprp(lib, truncated, QueryOracle{f.truth}, Policy(PolicyKind::random, 1)),
               ValidationError);
}

TEST(Sprp, UpdateIsMonotoneAndIdempotent) {
  const Fig2Fixture f = builtin_fig2();
  for (const Plan& p : {f.p1, f.p2, f.p3, f.p4, f.p1_prime, f.p2_prime})
    for (bool answer : {true, false}) {
      HypothesisSet once;
      try {
        once = update(f.hypotheses, p, answer);
      } catch (const InconsistentOracle&) {
        continue;
      }
      EXPECT_LE(once.size(), f.hypotheses.size());
      EXPECT_TRUE(same_hypotheses(update(once, p, answer), once));
      double total = 0.0;
      for (const auto& h : once.hypotheses) total += h.weight;
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
}

TEST(Sprp, TraceSeriesStartsAtOneAndDecreases) {
  const Fig2Fixture f = builtin_fig2();
  const SprpResult r =
      run_sprp(*f.library, f.hypotheses, QueryOracle{f.truth}, Policy(PolicyKind::random, 11));
  const auto series = r.trace.remaining_fraction();
  ASSERT_FALSE(series.empty());
  EXPECT_DOUBLE_EQ(series.front(), 1.0);
  for (std::size_t i = 1; i < series.size(); ++i) EXPECT_LE(series[i], series[i - 1]);
  EXPECT_EQ(series.size(), r.trace.queries() + 1);
}

}  // namespace
}  // namespace seqplan
