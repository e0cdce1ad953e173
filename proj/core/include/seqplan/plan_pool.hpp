#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "seqplan/plan_tree.hpp"
#include "seqplan/recognizer.hpp"

namespace seqplan {

using PlanRef = std::uint32_t;

/// Already-queried plans, by canonical key.
using ClosedSet = std::unordered_set<PlanKey>;

/// Interns structurally distinct plans and memoizes the refinement and match
/// relations between them. Not thread-safe: one pool per SPRP run.
class PlanPool {
 public:
  explicit PlanPool(RelationOptions opts = {}) : opts_(opts) {}

  PlanRef intern(const Plan& p);
  std::optional<PlanRef> find(const PlanKey& key) const;

  const Plan& plan(PlanRef r) const { return plans_.at(r); }
  const PlanKey& key(PlanRef r) const { return keys_.at(r); }
  std::size_t size() const noexcept { return plans_.size(); }
  RelationOptions options() const noexcept { return opts_; }

  /// is_refinement(plan(from), plan(to)).
  bool refines(PlanRef from, PlanRef to);
  bool matches(PlanRef a, PlanRef b);

 private:
  enum class Cached : std::uint8_t { unknown, no, yes };
  Cached& slot(std::vector<std::vector<Cached>>& table, PlanRef a, PlanRef b);

  RelationOptions opts_;
  std::vector<Plan> plans_;
  std::vector<PlanKey> keys_;
  std::unordered_map<PlanKey, PlanRef> index_;
  std::vector<std::vector<Cached>> refines_;
  std::vector<std::vector<Cached>> matches_;
};

/// A hypothesis as plan references into a pool. `origin` is its index in the
/// HypothesisSet it was built from.
struct IndexedHypothesis {
  std::vector<PlanRef> plans;
  double weight = 0.0;
  std::size_t origin = 0;
};

using IndexedSet = std::vector<IndexedHypothesis>;

IndexedSet index_hypotheses(PlanPool& pool, const HypothesisSet& set);

/// Rebuilds a HypothesisSet holding the surviving members of `origin` with
/// the weights carried by `survivors`.
HypothesisSet materialize(const HypothesisSet& origin, const IndexedSet& survivors);

/// Distinct plans of `set` not in `closed`, in order of first appearance.
std::vector<PlanRef> candidate_plans(const PlanPool& pool, const IndexedSet& set,
                                     const ClosedSet& closed);

}  // namespace seqplan
