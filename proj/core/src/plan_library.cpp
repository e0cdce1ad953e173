#include "seqplan/plan_library.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <unordered_set>

#include "seqplan/errors.hpp"

namespace seqplan {

namespace {

std::uint64_t next_identity() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b, std::uint64_t limit) {
  if (a == 0 || b == 0) return 0;
  if (a > limit / b) return limit;
  return std::min(a * b, limit);
}

}  // namespace

PlanLibrary PlanLibrary::build(const LibraryDraft& draft) {
  PlanLibrary lib;
  lib.identity_ = next_identity();

  auto declare = [&](const std::string& name, bool basic) {
    if (name.empty()) fail("empty action name");
    if (lib.by_name_.contains(name)) fail("duplicate action id '" + name + "'");
    ActionId id{static_cast<std::uint32_t>(lib.names_.size())};
    lib.names_.push_back(name);
    lib.by_name_.emplace(name, id);
    lib.basic_.push_back(basic);
    (basic ? lib.basic_list_ : lib.complex_list_).push_back(id);
  };
  for (const auto& b : draft.basic) declare(b, true);
  for (const auto& c : draft.complex) declare(c, false);

  auto lookup = [&](const std::string& name) -> ActionId {
    auto it = lib.by_name_.find(name);
    if (it == lib.by_name_.end()) fail("undeclared action '" + name + "'");
    return it->second;
  };

  if (draft.goals.empty()) fail("empty goals: the library must declare at least one goal");
  {
    std::unordered_set<std::string> seen;
    for (const auto& g : draft.goals) {
      ActionId id = lookup(g);
      if (lib.is_basic(id)) fail("goal '" + g + "' is not a complex action");
      if (!seen.insert(g).second) fail("duplicate goal '" + g + "'");
      lib.goals_.push_back(id);
    }
  }

  lib.methods_by_head_.resize(lib.names_.size());
  for (const auto& dm : draft.methods) {
    if (dm.id.empty()) fail("method with empty id");
    if (lib.method_by_id_.contains(dm.id)) fail("duplicate method id '" + dm.id + "'");
    RefinementMethod m;
    m.id = dm.id;
    m.head = lookup(dm.head);
    if (lib.is_basic(m.head))
      fail("method '" + dm.id + "' has basic head '" + dm.head + "'");
    if (dm.children.empty()) fail("method '" + dm.id + "' has no constituents");
    for (const auto& c : dm.children) m.constituents.push_back(lookup(c));
    const std::size_t k = m.constituents.size();
    for (auto [i, j] : dm.order) {
      if (i >= k || j >= k)
        fail("method '" + dm.id + "' has an order index out of range");
      if (i == j) fail("cyclic ordering constraint in method '" + dm.id + "'");
    }
    m.order = dm.order;

    // Transitive closure of the declared order; a cycle shows up on the diagonal.
    std::vector<std::vector<bool>> before(k, std::vector<bool>(k, false));
    for (auto [i, j] : dm.order) before[i][j] = true;
    for (std::size_t via = 0; via < k; ++via)
      for (std::size_t i = 0; i < k; ++i)
        if (before[i][via])
          for (std::size_t j = 0; j < k; ++j)
            if (before[via][j]) before[i][j] = true;
    std::vector<std::vector<std::size_t>> preds(k);
    std::vector<std::size_t> minimal;
    for (std::size_t j = 0; j < k; ++j) {
      if (before[j][j]) fail("cyclic ordering constraint in method '" + dm.id + "'");
      for (std::size_t i = 0; i < k; ++i)
        if (before[i][j]) preds[j].push_back(i);
      if (preds[j].empty()) minimal.push_back(j);
    }

    MethodId id{static_cast<std::uint32_t>(lib.methods_.size())};
    lib.method_by_id_.emplace(m.id, id);
    lib.methods_by_head_[m.head.value].push_back(id);
    lib.methods_.push_back(std::move(m));
    lib.closure_.push_back(std::move(preds));
    lib.minimal_.push_back(std::move(minimal));
  }

  // The complex part of the grammar must be acyclic, and every complex action
  // reachable from a goal needs at least one method.
  enum class Mark : std::uint8_t { none, active, done };
  std::vector<Mark> mark(lib.names_.size(), Mark::none);
  auto visit = [&](auto&& self, ActionId a) -> void {
    if (lib.is_basic(a) || mark[a.value] == Mark::done) return;
    if (mark[a.value] == Mark::active)
      fail("cyclic grammar: complex action '" + lib.name(a) + "' is reachable from itself");
    mark[a.value] = Mark::active;
    for (MethodId m : lib.methods_by_head_[a.value])
      for (ActionId c : lib.methods_[m.value].constituents) self(self, c);
    mark[a.value] = Mark::done;
  };
  for (ActionId c : lib.complex_list_) visit(visit, c);

  std::vector<bool> reached(lib.names_.size(), false);
  auto reach = [&](auto&& self, ActionId a) -> void {
    if (lib.is_basic(a) || reached[a.value]) return;
    reached[a.value] = true;
    const auto& ms = lib.methods_by_head_[a.value];
    if (ms.empty())
      fail("complex action '" + lib.name(a) + "' has no refinement method");
    for (MethodId m : ms)
      for (ActionId c : lib.methods_[m.value].constituents) self(self, c);
  };
  for (ActionId g : lib.goals_) reach(reach, g);

  lib.priors_.assign(lib.names_.size(), 0.0);
  if (draft.goal_priors.empty()) {
    for (ActionId g : lib.goals_) lib.priors_[g.value] = 1.0 / lib.goals_.size();
  } else {
    double total = 0.0;
    for (const auto& [name, p] : draft.goal_priors) {
      ActionId id = lookup(name);
      if (!lib.is_goal(id)) fail("goal_priors names non-goal '" + name + "'");
      if (!(p >= 0.0) || !std::isfinite(p)) fail("goal prior for '" + name + "' is not a probability");
      lib.priors_[id.value] = p;
      total += p;
    }
    for (ActionId g : lib.goals_)
      if (!draft.goal_priors.contains(lib.name(g)))
        fail("goal_priors is missing goal '" + lib.name(g) + "'");
    if (std::abs(total - 1.0) > 1e-9) fail("goal_priors must sum to 1");
  }
  return lib;
}

std::optional<ActionId> PlanLibrary::find_action(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

ActionId PlanLibrary::action(std::string_view name) const {
  if (auto a = find_action(name)) return *a;
  throw ValidationError("unknown action '" + std::string(name) + "'");
}

std::optional<MethodId> PlanLibrary::find_method(std::string_view id) const {
  auto it = method_by_id_.find(std::string(id));
  if (it == method_by_id_.end()) return std::nullopt;
  return it->second;
}

MethodId PlanLibrary::method_id(std::string_view id) const {
  if (auto m = find_method(id)) return *m;
  throw ValidationError("unknown method '" + std::string(id) + "'");
}

std::span<const MethodId> PlanLibrary::methods_for(ActionId label) const {
  if (label.value >= names_.size()) throw ValidationError("unknown action id");
  if (is_basic(label))
    throw ValidationError("'" + name(label) + "' is a basic action and has no methods");
  return methods_by_head_[label.value];
}

bool PlanLibrary::is_goal(ActionId a) const {
  return std::find(goals_.begin(), goals_.end(), a) != goals_.end();
}

double PlanLibrary::goal_prior(ActionId goal) const { return priors_.at(goal.value); }

LibraryDraft PlanLibrary::to_draft() const {
  LibraryDraft d;
  for (ActionId a : basic_list_) d.basic.push_back(name(a));
  for (ActionId a : complex_list_) d.complex.push_back(name(a));
  for (ActionId g : goals_) {
    d.goals.push_back(name(g));
    d.goal_priors[name(g)] = priors_[g.value];
  }
  for (const auto& m : methods_) {
    LibraryDraft::Method dm;
    dm.id = m.id;
    dm.head = name(m.head);
    for (ActionId c : m.constituents) dm.children.push_back(name(c));
    dm.order = m.order;
    d.methods.push_back(std::move(dm));
  }
  return d;
}

std::uint64_t count_complete_plans(const PlanLibrary& lib, ActionId label,
                                   std::uint64_t limit) {
  std::vector<std::optional<std::uint64_t>> memo(lib.action_count());
  auto count = [&](auto&& self, ActionId a) -> std::uint64_t {
    if (lib.is_basic(a)) return 1;
    if (memo[a.value]) return *memo[a.value];
    std::uint64_t total = 0;
    for (MethodId m : lib.methods_for(a)) {
      std::uint64_t ways = 1;
      for (ActionId c : lib.method(m).constituents)
        ways = saturating_mul(ways, self(self, c), limit);
      total = (total > limit - ways) ? limit : total + ways;
    }
    memo[a.value] = total;
    return total;
  };
  return count(count, label);
}

}  // namespace seqplan
