#include <gtest/gtest.h>

#include "seqplan/fixtures.hpp"
#include "seqplan/policies.hpp"
#include "seqplan/sprp.hpp"

namespace seqplan {
namespace {

class Fig2 : public ::testing::Test {
 protected:
  Fig2() : f(builtin_fig2()) {}

  const Hypothesis& h(std::size_t i) const { return f.hypotheses.hypotheses.at(i - 1); }

  /// 1-based indices of hypotheses that `update` removes.
  std::set<std::size_t> removed(const Plan& p, bool answer) const {
    const HypothesisSet after = update(f.hypotheses, p, answer);
    std::set<std::size_t> gone;
    for (std::size_t i = 0; i < f.hypotheses.size(); ++i) {
      const PlanKey k = hypothesis_key(f.hypotheses.hypotheses[i]);
      bool kept = false;
      for (const auto& s : after.hypotheses) kept |= hypothesis_key(s) == k;
      if (!kept) gone.insert(i + 1);
    }
    return gone;
  }

  Fig2Fixture f;
};

TEST_F(Fig2, P2RefinesToP1AndP3) {
  EXPECT_TRUE(is_refinement(f.p2, f.p1));
  EXPECT_TRUE(is_refinement(f.p2, f.p3));
}

TEST_F(Fig2, P1AndP3AreNotRefinementsOfEachOther) {
  EXPECT_FALSE(is_refinement(f.p1, f.p3));
  EXPECT_FALSE(is_refinement(f.p3, f.p1));
}

TEST_F(Fig2, P1MatchesP3ThroughQ) {
  EXPECT_TRUE(is_refinement(f.p1, f.q));
  EXPECT_TRUE(is_refinement(f.p3, f.q));
  EXPECT_TRUE(matches(f.p1, f.p3));
  EXPECT_TRUE(matches(f.p3, f.p1));
}

TEST_F(Fig2, H2RefinesNeitherH1NorH3) {
  EXPECT_FALSE(hypothesis_refines(h(2), h(1)));
  EXPECT_FALSE(hypothesis_refines(h(2), h(3)));
  EXPECT_FALSE(is_refinement(f.p2_prime, f.p1_prime));
}

TEST_F(Fig2, NoPlanOfH4MatchesP1) {
  for (const Plan& p : h(4).plans) EXPECT_FALSE(matches(p, f.p1));
}

TEST_F(Fig2, QueryAnswersAgainstQ) {
  QueryOracle oracle{Hypothesis{{f.q}, 1.0}};
  EXPECT_TRUE(query_answer(oracle, f.p1));
  EXPECT_TRUE(query_answer(oracle, f.q));
  for (const Plan& p : h(4).plans) EXPECT_FALSE(query_answer(oracle, p));
}

TEST_F(Fig2, PositiveAnswerOnP1RemovesH4) {
  EXPECT_EQ(removed(f.p1, true), (std::set<std::size_t>{4}));
}

TEST_F(Fig2, NegativeAnswerOnP2RemovesH1H2H3) {
  EXPECT_EQ(removed(f.p2, false), (std::set<std::size_t>{1, 2, 3}));
}

TEST_F(Fig2, NegativeAnswerOnP1RemovesH1) {
  EXPECT_EQ(removed(f.p1, false), (std::set<std::size_t>{1}));
}

TEST_F(Fig2, TruthDescribesObservations) {
  EXPECT_TRUE(describes(f.truth, f.observations));
  for (const auto& x : f.hypotheses.hypotheses) EXPECT_TRUE(describes(x, f.observations));
}

TEST_F(Fig2, CandidatePlansDeduplicate) {
  // Eight slots; P1' = P3' and P2' = P4' collapse.
  const auto c = candidate_plans(f.hypotheses, {});
  EXPECT_EQ(c.size(), 6u);
  ClosedSet all;
  for (const auto& p : c) all.insert(canonical_key(p));
  EXPECT_TRUE(candidate_plans(f.hypotheses, all).empty());
  const auto after = candidate_plans(f.hypotheses, ClosedSet{canonical_key(f.p1)});
  EXPECT_EQ(after.size(), 5u);
  for (const auto& p : after) EXPECT_NE(canonical_key(p), canonical_key(f.p1));
}

TEST(Chemistry, OneQueryResolvesStrategy) {
  const ChemistryCatalog cat = builtin_chemistry();
  const PlanLibrary& lib = *cat.library;
  const HypothesisSet h0 = recognize(lib, std::vector<ActionId>{lib.action("mix_AB")});
  ASSERT_EQ(h0.size(), 2u);
  Instance truth_source = restrict_to_prefix(cat.instances.at("pairwise"), 1);
  for (PolicyKind k : kAllPolicies)
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const SprpResult r =
          run_sprp(lib, h0, QueryOracle{truth_source.truth}, Policy(k, seed));
      EXPECT_EQ(r.trace.queries(), 1u);
      ASSERT_EQ(r.final_set.size(), 1u);
      EXPECT_EQ(r.final_set.hypotheses[0].plans[0].root().method,
                lib.method_id("investigate-pairwise"));
    }
}

}  // namespace
}  // namespace seqplan
