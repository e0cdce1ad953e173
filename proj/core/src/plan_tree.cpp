#include "seqplan/plan_tree.hpp"

#include <algorithm>
#include <unordered_set>

#include "seqplan/errors.hpp"

namespace seqplan {

namespace {

NodePtr leaf(ActionId label) {
  auto n = std::make_shared<PlanNode>();
  n->label = label;
  return n;
}

template <typename Fn>
NodePtr rebuild(const NodePtr& node, const NodePath& path, std::size_t depth, Fn&& edit) {
  if (depth == path.size()) return edit(node);
  if (path[depth] >= node->children.size()) throw PlanError("node path does not exist");
  auto copy = std::make_shared<PlanNode>(*node);
  copy->children[path[depth]] =
      rebuild(node->children[path[depth]], path, depth + 1, std::forward<Fn>(edit));
  return copy;
}

void collect_frontier(const PlanNode& n, NodePath& path, std::vector<NodePath>& out) {
  if (!n.expanded()) {
    if (!n.observed_at) out.push_back(path);
    return;
  }
  for (std::uint32_t i = 0; i < n.children.size(); ++i) {
    path.push_back(i);
    collect_frontier(*n.children[i], path, out);
    path.pop_back();
  }
}

bool refines_node(const NodePtr& u, const NodePtr& v, bool strict) {
  if (u == v) return true;
  if (u->label != v->label) return false;
  if (!u->expanded()) {
    if (!strict) return true;
    if (u->observed_at) return u->observed_at == v->observed_at;
    return observation_count(*v) == 0;
  }
  if (!v->expanded() || u->method != v->method) return false;
  for (std::size_t i = 0; i < u->children.size(); ++i)
    if (!refines_node(u->children[i], v->children[i], strict)) return false;
  return true;
}

bool matches_node(const NodePtr& u, const NodePtr& v, bool strict) {
  if (u == v) return true;
  if (u->label != v->label) return false;
  if (!u->expanded() || !v->expanded()) {
    if (!strict) return true;
    if (u->observed_at || v->observed_at) return u->observed_at == v->observed_at;
    return observation_count(*u) == 0 && observation_count(*v) == 0;
  }
  if (u->method != v->method) return false;
  for (std::size_t i = 0; i < u->children.size(); ++i)
    if (!matches_node(u->children[i], v->children[i], strict)) return false;
  return true;
}

void append_key(const PlanNode& n, bool with_observations, std::string& out) {
  out += std::to_string(n.label.value);
  if (n.method) {
    out += ':';
    out += std::to_string(n.method->value);
    out += '(';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out += ',';
      append_key(*n.children[i], with_observations, out);
    }
    out += ')';
  }
  if (with_observations && n.observed_at) {
    out += '@';
    out += std::to_string(*n.observed_at);
  }
}

void check_same_library(const Plan& p, const Plan& q) {
  if (p.library() != q.library()) throw LibraryMismatch();
}

}  // namespace

Plan::Plan(const PlanLibrary& lib, ActionId root_label)
    : root_(leaf(root_label)), library_(lib.identity()) {
  if (root_label.value >= lib.action_count()) throw PlanError("unknown root label");
}

Plan::Plan(std::uint64_t library_identity, NodePtr root)
    : root_(std::move(root)), library_(library_identity) {
  if (!root_) throw PlanError("plan without root");
}

const PlanNode& Plan::node(const NodePath& path) const {
  const PlanNode* n = root_.get();
  for (auto i : path) {
    if (i >= n->children.size()) throw PlanError("node path does not exist");
    n = n->children[i].get();
  }
  return *n;
}

void validate_plan(const PlanLibrary& lib, const Plan& p) {
  if (p.library() != lib.identity()) throw LibraryMismatch();
  std::unordered_set<std::size_t> seen;
  auto check = [&](auto&& self, const PlanNode& n) -> void {
    if (n.label.value >= lib.action_count()) throw ValidationError("plan node with unknown label");
    const std::string& name = lib.name(n.label);
    if (lib.is_basic(n.label)) {
      if (n.method || !n.children.empty())
        throw ValidationError("basic node '" + name + "' cannot be expanded");
      if (n.observed_at && !seen.insert(*n.observed_at).second)
        throw ValidationError("observation index " + std::to_string(*n.observed_at) +
                              " appears twice in one plan");
      return;
    }
    if (n.observed_at) throw ValidationError("complex node '" + name + "' cannot be observed");
    if (!n.method) {
      if (!n.children.empty())
        throw ValidationError("open node '" + name + "' has children");
      return;
    }
    if (n.method->value >= lib.methods().size()) throw ValidationError("unknown method id");
    const RefinementMethod& m = lib.method(*n.method);
    if (m.head != n.label)
      throw ValidationError("method '" + m.id + "' does not refine '" + name + "'");
    if (m.constituents.size() != n.children.size())
      throw ValidationError("node '" + name + "' has the wrong number of children");
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (!n.children[i]) throw ValidationError("null child");
      if (n.children[i]->label != m.constituents[i])
        throw ValidationError("children of '" + name + "' do not follow method '" + m.id + "'");
      self(self, *n.children[i]);
    }
  };
  check(check, p.root());
}

bool is_complete(const PlanLibrary& lib, const Plan& p) {
  auto walk = [&](auto&& self, const PlanNode& n) -> bool {
    if (!n.expanded()) return lib.is_basic(n.label);
    for (const auto& c : n.children)
      if (!self(self, *c)) return false;
    return true;
  };
  return walk(walk, p.root());
}

std::vector<NodePath> open_frontier(const Plan& p) {
  std::vector<NodePath> out;
  NodePath path;
  collect_frontier(p.root(), path, out);
  return out;
}

Plan apply_method(const PlanLibrary& lib, const Plan& p, const NodePath& path, MethodId m) {
  if (p.library() != lib.identity()) throw LibraryMismatch();
  const PlanNode& target = p.node(path);
  if (lib.is_basic(target.label) || target.expanded())
    throw PlanError("node '" + lib.name(target.label) + "' is not on the open frontier");
  const RefinementMethod& method = lib.method(m);
  if (method.head != target.label)
    throw PlanError("method '" + method.id + "' does not refine '" + lib.name(target.label) + "'");
  NodePtr root = rebuild(p.root_ptr(), path, 0, [&](const NodePtr& old) {
    auto n = std::make_shared<PlanNode>(*old);
    n->method = m;
    n->children.clear();
    for (ActionId c : method.constituents) n->children.push_back(leaf(c));
    return NodePtr(n);
  });
  return Plan(p.library(), std::move(root));
}

Plan observe_leaf(const PlanLibrary& lib, const Plan& p, const NodePath& path,
                  std::size_t index) {
  if (p.library() != lib.identity()) throw LibraryMismatch();
  NodePtr root = rebuild(p.root_ptr(), path, 0, [&](const NodePtr& old) {
    if (lib.is_complex(old->label) || old->observed_at)
      throw PlanError("node is not a pending leaf");
    auto n = std::make_shared<PlanNode>(*old);
    n->observed_at = index;
    return NodePtr(n);
  });
  return Plan(p.library(), std::move(root));
}

Plan replace_subtree(const Plan& p, const NodePath& path, NodePtr subtree) {
  NodePtr root = rebuild(p.root_ptr(), path, 0, [&](const NodePtr&) { return subtree; });
  return Plan(p.library(), std::move(root));
}

bool is_refinement(const Plan& p, const Plan& q, RelationOptions opts) {
  check_same_library(p, q);
  return refines_node(p.root_ptr(), q.root_ptr(), opts.strict_observations);
}

bool matches(const Plan& p, const Plan& q, RelationOptions opts) {
  check_same_library(p, q);
  return matches_node(p.root_ptr(), q.root_ptr(), opts.strict_observations);
}

bool hypothesis_refines(const Hypothesis& h, const Hypothesis& g, RelationOptions opts) {
  const std::size_t n = h.plans.size();
  if (n != g.plans.size()) return false;
  std::vector<std::vector<bool>> ok(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ok[i][j] = is_refinement(h.plans[i], g.plans[j], opts);
  std::vector<bool> used(n, false);
  auto assign = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || !ok[i][j]) continue;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return assign(assign, 0);
}

PlanKey canonical_key(const Plan& p) {
  PlanKey k;
  append_key(p.root(), true, k.text);
  return k;
}

PlanKey structural_key(const Plan& p) {
  PlanKey k;
  append_key(p.root(), false, k.text);
  return k;
}

PlanKey hypothesis_key(const Hypothesis& h) {
  std::vector<std::string> keys;
  keys.reserve(h.plans.size());
  for (const auto& p : h.plans) keys.push_back(canonical_key(p).text);
  std::sort(keys.begin(), keys.end());
  PlanKey k;
  for (const auto& s : keys) {
    k.text += s;
    k.text += '|';
  }
  return k;
}

bool describes(const Hypothesis& h, std::span<const ActionId> obs) {
  std::vector<bool> seen(obs.size(), false);
  std::size_t count = 0;
  bool ok = true;
  auto walk = [&](auto&& self, const PlanNode& n) -> void {
    if (!ok) return;
    if (n.observed_at) {
      const std::size_t i = *n.observed_at;
      if (i >= obs.size() || seen[i] || obs[i] != n.label) {
        ok = false;
        return;
      }
      seen[i] = true;
      ++count;
    }
    for (const auto& c : n.children) self(self, *c);
  };
  for (const auto& p : h.plans) walk(walk, p.root());
  return ok && count == obs.size();
}

bool fully_observed(const PlanNode& n) {
  if (!n.expanded()) return n.observed_at.has_value();
  for (const auto& c : n.children)
    if (!fully_observed(*c)) return false;
  return true;
}

std::size_t observation_count(const PlanNode& n) {
  std::size_t total = n.observed_at ? 1 : 0;
  for (const auto& c : n.children) total += observation_count(*c);
  return total;
}

}  // namespace seqplan
