#include <gtest/gtest.h>

#include <set>

#include "seqplan/errors.hpp"
#include "seqplan/domain_gen.hpp"
#include "seqplan/io.hpp"
#include "seqplan/recognizer.hpp"

namespace seqplan {
namespace {

TEST(DomainGen, DeterministicInSeed) {
  GenParams p;
  p.seed = 42;
  const Instance a = gen_instance(p);
  const Instance b = gen_instance(p);
  EXPECT_EQ(serialize_library(*a.library), serialize_library(*b.library));
  EXPECT_EQ(serialize_observations(*a.library, a.observations),
            serialize_observations(*b.library, b.observations));
  EXPECT_EQ(hypothesis_to_json(*a.library, a.truth), hypothesis_to_json(*b.library, b.truth));
}

TEST(DomainGen, SeedsGiveDistinctLibraries) {
  std::set<std::string> texts;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GenParams p;
    p.seed = seed;
    texts.insert(serialize_library(gen_library(p)));
  }
  EXPECT_EQ(texts.size(), 200u);
}

TEST(DomainGen, ConfiguredShape) {
  GenParams p;
  p.num_goals = 5;
  p.branching = 3;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    p.seed = seed;
    const PlanLibrary lib = gen_library(p);
    EXPECT_EQ(lib.goals().size(), 5u);
    for (ActionId c : lib.complex_actions()) {
      EXPECT_GE(lib.methods_for(c).size(), 1u);
      EXPECT_LE(lib.methods_for(c).size(), 3u);
    }
  }
}

TEST(DomainGen, DepthOneGivesTwoLevelTrees) {
  GenParams p;
  p.depth = 1;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    p.seed = seed;
    const Instance inst = gen_instance(p);
    const PlanLibrary& lib = *inst.library;
    for (const auto& m : lib.methods())
      for (ActionId c : m.constituents) EXPECT_TRUE(lib.is_basic(c));
    for (const Plan& t : inst.truth.plans)
      for (const auto& child : t.root().children) EXPECT_TRUE(child->children.empty());
  }
}

TEST(DomainGen, InstanceInvariants) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GenParams p;
    p.seed = seed;
    p.obs_len = 1 + seed % 7;
    const Instance inst = gen_instance(p);
    const PlanLibrary& lib = *inst.library;
    EXPECT_EQ(inst.observations.size(), p.obs_len);
    EXPECT_TRUE(describes(inst.truth, inst.observations));
    for (const Plan& t : inst.truth.plans) {
      EXPECT_TRUE(is_complete(lib, t));
      EXPECT_TRUE(lib.is_goal(t.root().label));
    }
    // The observations follow the agent's ordering constraints, so the
    // recognizer can replay them.
    EXPECT_NO_THROW(recognize(lib, inst.observations));
  }
}

TEST(DomainGen, PrefixesNest) {
  GenParams p;
  p.seed = 5;
  const Instance inst = gen_instance(p);
  for (std::size_t len = 1; len <= inst.observations.size(); ++len) {
    const Instance cut = restrict_to_prefix(inst, len);
    ASSERT_EQ(cut.observations.size(), len);
    EXPECT_TRUE(describes(cut.truth, cut.observations));
  }
  EXPECT_THROW(restrict_to_prefix(inst, inst.schedule.size() + 1), ValidationError);
}

TEST(DomainGen, RejectsImpossibleParameters) {
  GenParams p;
  p.num_basic = 0;
  EXPECT_THROW(gen_instance(p), ValidationError);
  p = GenParams{};
  p.depth = 0;
  EXPECT_THROW(gen_instance(p), ValidationError);
  p = GenParams{};
  p.min_constituents = 4;
  p.max_constituents = 2;
  EXPECT_THROW(gen_instance(p), ValidationError);
}

}  // namespace
}  // namespace seqplan
