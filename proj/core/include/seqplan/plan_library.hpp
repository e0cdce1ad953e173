#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace seqplan {

/// Index of an action symbol inside a PlanLibrary.
struct ActionId {
  std::uint32_t value = 0;
  friend auto operator<=>(ActionId, ActionId) = default;
};

/// Index of a refinement method inside a PlanLibrary (file order).
struct MethodId {
  std::uint32_t value = 0;
  friend auto operator<=>(MethodId, MethodId) = default;
};

/// Constituent i must complete before constituent j begins.
using OrderPair = std::pair<std::size_t, std::size_t>;

/// Name-based description of a library, as read from a file or built by a
/// generator. PlanLibrary::build validates it.
struct LibraryDraft {
  struct Method {
    std::string id;
    std::string head;
    std::vector<std::string> children;
    std::vector<OrderPair> order;
  };

  std::vector<std::string> basic;
  std::vector<std::string> complex;
  std::vector<std::string> goals;
  std::map<std::string, double> goal_priors;  // empty => uniform
  std::vector<Method> methods;
};

struct RefinementMethod {
  std::string id;
  ActionId head;
  std::vector<ActionId> constituents;
  std::vector<OrderPair> order;  // as declared, not closed
};

/// The grammar of legal plans: basic actions, complex actions, refinement
/// methods with partial-order constraints, and the goal set with priors.
///
/// Immutable after construction. Every instance carries an identity token
/// that plans record so relations between plans of different libraries can be
/// rejected. Copies share the token.
class PlanLibrary {
 public:
  /// Validates `draft` and builds the library. Throws ValidationError naming
  /// the violated invariant.
  static PlanLibrary build(const LibraryDraft& draft);

  std::uint64_t identity() const noexcept { return identity_; }

  std::size_t action_count() const noexcept { return names_.size(); }
  const std::string& name(ActionId a) const { return names_.at(a.value); }
  std::optional<ActionId> find_action(std::string_view name) const;
  /// Throws ValidationError for unknown names.
  ActionId action(std::string_view name) const;

  bool is_basic(ActionId a) const { return basic_.at(a.value); }
  bool is_complex(ActionId a) const { return !is_basic(a); }
  std::span<const ActionId> basic_actions() const noexcept { return basic_list_; }
  std::span<const ActionId> complex_actions() const noexcept { return complex_list_; }

  std::span<const RefinementMethod> methods() const noexcept { return methods_; }
  const RefinementMethod& method(MethodId m) const { return methods_.at(m.value); }
  std::optional<MethodId> find_method(std::string_view id) const;
  MethodId method_id(std::string_view id) const;

  /// Methods whose head is `label`, in file order. Throws ValidationError if
  /// `label` is basic.
  std::span<const MethodId> methods_for(ActionId label) const;

  std::span<const ActionId> goals() const noexcept { return goals_; }
  bool is_goal(ActionId a) const;
  double goal_prior(ActionId goal) const;

  /// Indices of constituents that must complete before constituent `index`
  /// begins (transitive closure of the method's order).
  std::span<const std::size_t> predecessors(MethodId m, std::size_t index) const {
    return closure_.at(m.value).at(index);
  }
  /// Constituent indices with no predecessors, ascending.
  std::span<const std::size_t> minimal_constituents(MethodId m) const {
    return minimal_.at(m.value);
  }

  /// Name-based view of this library; build(to_draft()) reproduces it.
  LibraryDraft to_draft() const;

 private:
  PlanLibrary() = default;

  std::uint64_t identity_ = 0;
  std::vector<std::string> names_;
  std::unordered_map<std::string, ActionId> by_name_;
  std::vector<bool> basic_;
  std::vector<ActionId> basic_list_;
  std::vector<ActionId> complex_list_;
  std::vector<RefinementMethod> methods_;
  std::unordered_map<std::string, MethodId> method_by_id_;
  std::vector<std::vector<MethodId>> methods_by_head_;
  std::vector<ActionId> goals_;
  std::vector<double> priors_;  // indexed by ActionId, 0 for non-goals
  std::vector<std::vector<std::vector<std::size_t>>> closure_;
  std::vector<std::vector<std::size_t>> minimal_;
};

/// Parses the JSON library format:
///   { "basic": [..], "complex": [..], "goals": [..],
///     "goal_priors": {name: p, ..},   (optional)
///     "methods": [ {"id", "head", "children": [..], "order": [[i, j], ..]} ] }
/// Throws SyntaxError (with line/column) or ValidationError.
PlanLibrary parse_library(std::string_view text);

/// Reads and parses a library file.
PlanLibrary load_library(const std::string& path);

/// JSON text in the format accepted by parse_library. Priors are always written.
std::string serialize_library(const PlanLibrary& lib);

/// Number of distinct complete plans rooted at `label` (saturates at `limit`).
std::uint64_t count_complete_plans(const PlanLibrary& lib, ActionId label,
                                   std::uint64_t limit = UINT64_MAX);

}  // namespace seqplan

template <>
struct std::hash<seqplan::ActionId> {
  std::size_t operator()(seqplan::ActionId a) const noexcept {
    return std::hash<std::uint32_t>{}(a.value);
  }
};
