#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "seqplan/plan_pool.hpp"
#include "seqplan/sprp.hpp"

namespace seqplan {

enum class PolicyKind { random, mph, mpp, entropy };

std::string_view to_string(PolicyKind kind);
std::optional<PolicyKind> parse_policy_kind(std::string_view name);
inline constexpr PolicyKind kAllPolicies[] = {PolicyKind::random, PolicyKind::mph,
                                              PolicyKind::mpp, PolicyKind::entropy};

/// Shannon entropy in bits of the (renormalized) weights; 0 for empty or
/// singleton sets.
double entropy(std::span<const double> weights);
double entropy(const IndexedSet& set);
double entropy(const HypothesisSet& set);

/// Σ P(h) over hypotheses holding some plan that refines `t`.
double cumulative_plan_prob(PlanPool& pool, const IndexedSet& set, PlanRef t);
double cumulative_plan_prob(const HypothesisSet& set, const Plan& t, RelationOptions rel = {});

/// P(t)·Ent(filter(True)) + (1 − P(t))·Ent(filter(False)).
double expected_entropy(PlanPool& pool, const IndexedSet& set, PlanRef t);

// Selectors. Each returns a member of candidate_plans(pool, set, closed),
// breaks ties uniformly using `seed`, and throws NoCandidates when the
// candidate pool is empty.
PlanRef select_random(PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
                      std::uint64_t seed);
/// A plan from the heaviest hypothesis that still has an unqueried plan.
PlanRef select_mph(PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
                   std::uint64_t seed);
/// argmax of cumulative_plan_prob.
PlanRef select_mpp(PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
                   std::uint64_t seed);
/// argmin of expected_entropy.
PlanRef select_min_entropy(PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
                           std::uint64_t seed);

PlanRef select(PolicyKind kind, PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
               std::uint64_t seed);

/// A query policy bound to a run seed; usable as an SPRP Selector. Each step
/// draws from its own stream derived from (seed, step).
class Policy {
 public:
  Policy(PolicyKind kind, std::uint64_t seed) : kind_(kind), seed_(seed) {}

  PolicyKind kind() const noexcept { return kind_; }
  std::uint64_t seed() const noexcept { return seed_; }

  PlanRef operator()(PlanPool& pool, const IndexedSet& set, const ClosedSet& closed,
                     std::size_t step) const;

 private:
  PolicyKind kind_;
  std::uint64_t seed_;
};

/// Convenience forms over HypothesisSet values.
std::vector<Plan> candidate_plans(const HypothesisSet& set, const ClosedSet& closed);
Plan select(PolicyKind kind, const HypothesisSet& set, const ClosedSet& closed,
            std::uint64_t seed, RelationOptions rel = {});

}  // namespace seqplan
