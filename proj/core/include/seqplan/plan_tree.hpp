#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqplan/plan_library.hpp"

namespace seqplan {

struct PlanNode;
using NodePtr = std::shared_ptr<const PlanNode>;

/// One node of a plan tree. Nodes are immutable and shared between plans.
///
/// A complex node without `method` is an open-frontier node. A basic node
/// without `observed_at` is a pending leaf: part of the plan, not yet seen.
struct PlanNode {
  ActionId label;
  std::optional<MethodId> method;
  std::vector<NodePtr> children;
  std::optional<std::size_t> observed_at;

  bool expanded() const noexcept { return method.has_value(); }
};

/// Child indices from the root; the empty path is the root itself.
using NodePath = std::vector<std::uint32_t>;

/// A plan tree for one goal (or, during construction, any complex action).
/// Value type: every edit returns a new Plan sharing untouched subtrees.
class Plan {
 public:
  /// Single open-frontier node labelled `root_label`.
  Plan(const PlanLibrary& lib, ActionId root_label);
  /// Wraps an existing tree. Does not validate; see validate_plan.
  Plan(std::uint64_t library_identity, NodePtr root);

  const PlanNode& root() const noexcept { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }
  std::uint64_t library() const noexcept { return library_; }

  /// Throws PlanError if the path does not exist.
  const PlanNode& node(const NodePath& path) const;

 private:
  NodePtr root_;
  std::uint64_t library_;
};

/// Options shared by the refinement and match relations.
struct RelationOptions {
  /// When set, observation indices are part of a leaf's identity and an open
  /// node may only be refined into a subtree without observations. Off by
  /// default: relations compare labels and method ids only.
  bool strict_observations = false;
};

/// Opaque structural identity of a plan. Equal keys iff structurally equal
/// plans (labels, methods, children order, observation indices).
struct PlanKey {
  std::string text;
  friend bool operator==(const PlanKey&, const PlanKey&) = default;
  friend auto operator<=>(const PlanKey&, const PlanKey&) = default;
};

struct Hypothesis {
  std::vector<Plan> plans;
  double weight = 1.0;
};

using ObservationSequence = std::vector<ActionId>;

/// Throws ValidationError unless every node of `p` agrees with `lib`.
void validate_plan(const PlanLibrary& lib, const Plan& p);

/// True iff every leaf is a basic action.
bool is_complete(const PlanLibrary& lib, const Plan& p);

/// Open complex nodes and pending basic leaves, left to right.
std::vector<NodePath> open_frontier(const Plan& p);

/// Expands the open node at `path` with `m`; children are fresh and open.
/// Throws PlanError if the node is not an open complex node or `m` has a
/// different head.
Plan apply_method(const PlanLibrary& lib, const Plan& p, const NodePath& path, MethodId m);

/// Marks the pending basic leaf at `path` as observation `index`.
Plan observe_leaf(const PlanLibrary& lib, const Plan& p, const NodePath& path,
                  std::size_t index);

/// Replaces the subtree at `path` with `subtree`.
Plan replace_subtree(const Plan& p, const NodePath& path, NodePtr subtree);

/// q can be obtained from p by expanding open nodes only.
bool is_refinement(const Plan& p, const Plan& q, RelationOptions opts = {});

/// p and q share a common refinement.
bool matches(const Plan& p, const Plan& q, RelationOptions opts = {});

/// A perfect matching pairs every plan of h with a plan of g it refines to.
bool hypothesis_refines(const Hypothesis& h, const Hypothesis& g, RelationOptions opts = {});

PlanKey canonical_key(const Plan& p);
/// Key that ignores observation annotations.
PlanKey structural_key(const Plan& p);
/// Order-independent key of a hypothesis (sorted member keys).
PlanKey hypothesis_key(const Hypothesis& h);

/// Observed leaves, ordered by index, spell out `obs` exactly, and no index
/// is claimed twice.
bool describes(const Hypothesis& h, std::span<const ActionId> obs);

/// True iff every basic leaf under `n` is observed (open nodes never are).
bool fully_observed(const PlanNode& n);

/// Number of observed leaves under `n`.
std::size_t observation_count(const PlanNode& n);

}  // namespace seqplan

template <>
struct std::hash<seqplan::PlanKey> {
  std::size_t operator()(const seqplan::PlanKey& k) const noexcept {
    return std::hash<std::string>{}(k.text);
  }
};
