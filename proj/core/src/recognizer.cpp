#include "seqplan/recognizer.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "seqplan/errors.hpp"

namespace seqplan {

namespace {

void collect_enabled(const PlanLibrary& lib, const PlanNode& n, bool enabled, NodePath& path,
                     std::vector<NodePath>& out) {
  if (!n.expanded()) {
    if (enabled && !n.observed_at) out.push_back(path);
    return;
  }
  std::vector<bool> done;
  if (enabled) {
    done.reserve(n.children.size());
    for (const auto& c : n.children) done.push_back(fully_observed(*c));
  }
  for (std::uint32_t i = 0; i < n.children.size(); ++i) {
    bool child_enabled = enabled;
    if (enabled)
      for (std::size_t p : lib.predecessors(*n.method, i))
        if (!done[p]) {
          child_enabled = false;
          break;
        }
    path.push_back(i);
    collect_enabled(lib, *n.children[i], child_enabled, path, out);
    path.pop_back();
  }
}

/// Subtrees rooted at a complex label that reach a leaf labelled `observed`
/// through order-minimal constituents of freshly applied methods. Memoized
/// per label for one observation step.
class ExpansionPaths {
 public:
  ExpansionPaths(const PlanLibrary& lib, ActionId observed, std::size_t index)
      : lib_(lib), observed_(observed), index_(index), memo_(lib.action_count()),
        fresh_(lib.action_count()) {}

  const std::vector<NodePtr>& from(ActionId label) {
    auto& slot = memo_[label.value];
    if (slot) return *slot;
    std::vector<NodePtr> out;
    for (MethodId m : lib_.methods_for(label)) {
      const RefinementMethod& method = lib_.method(m);
      for (std::size_t i : lib_.minimal_constituents(m)) {
        const ActionId c = method.constituents[i];
        if (lib_.is_basic(c)) {
          if (c != observed_) continue;
          auto seen = std::make_shared<PlanNode>();
          seen->label = c;
          seen->observed_at = index_;
          out.push_back(expanded(label, m, i, std::move(seen)));
        } else {
          for (const NodePtr& sub : from(c)) out.push_back(expanded(label, m, i, sub));
        }
      }
    }
    slot = std::move(out);
    return *slot;
  }

 private:
  NodePtr expanded(ActionId label, MethodId m, std::size_t slot, NodePtr child) {
    auto n = std::make_shared<PlanNode>();
    n->label = label;
    n->method = m;
    const auto& cs = lib_.method(m).constituents;
    n->children.reserve(cs.size());
    for (std::size_t j = 0; j < cs.size(); ++j)
      n->children.push_back(j == slot ? child : fresh(cs[j]));
    return n;
  }

  NodePtr fresh(ActionId a) {
    auto& f = fresh_[a.value];
    if (!f) {
      auto n = std::make_shared<PlanNode>();
      n->label = a;
      f = std::move(n);
    }
    return f;
  }

  const PlanLibrary& lib_;
  ActionId observed_;
  std::size_t index_;
  std::vector<std::optional<std::vector<NodePtr>>> memo_;
  std::vector<NodePtr> fresh_;
};

}  // namespace

HypothesisSet HypothesisSet::seed() {
  HypothesisSet s;
  s.hypotheses.push_back(Hypothesis{{}, 1.0});
  return s;
}

std::vector<NodePath> enabled_expansion_targets(const PlanLibrary& lib, const Plan& p) {
  std::vector<NodePath> out;
  NodePath path;
  collect_enabled(lib, p.root(), true, path, out);
  return out;
}

double hypothesis_weight(const PlanLibrary& lib, const Hypothesis& h) {
  double w = 1.0;
  auto walk = [&](auto&& self, const PlanNode& n) -> void {
    if (!n.expanded()) return;
    w /= static_cast<double>(lib.methods_for(n.label).size());
    for (const auto& c : n.children) self(self, *c);
  };
  for (const auto& p : h.plans) {
    w *= lib.goal_prior(p.root().label);
    walk(walk, p.root());
  }
  return w;
}

void normalize_weights(std::vector<Hypothesis>& hypotheses) {
  double total = 0.0;
  for (const auto& h : hypotheses) total += h.weight;
  if (hypotheses.empty()) return;
  if (total <= 0.0) {
    for (auto& h : hypotheses) h.weight = 1.0 / hypotheses.size();
    return;
  }
  for (auto& h : hypotheses) h.weight /= total;
}

HypothesisSet explain_step(const PlanLibrary& lib, const HypothesisSet& current, ActionId o,
                           const RecognizerConfig& cfg, ExplainStats* stats) {
  if (o.value >= lib.action_count() || !lib.is_basic(o))
    throw ValidationError("observation must be a basic action");
  const std::size_t index = current.observations;
  ExpansionPaths paths(lib, o, index);

  HypothesisSet next;
  next.observations = index + 1;
  next.truncated = current.truncated;
  std::unordered_map<PlanKey, std::size_t> seen;
  std::size_t emitted = 0;

  auto emit = [&](Hypothesis h) {
    ++emitted;
    h.weight = hypothesis_weight(lib, h);
    auto [it, inserted] = seen.try_emplace(hypothesis_key(h), next.hypotheses.size());
    if (inserted)
      next.hypotheses.push_back(std::move(h));
    else
      next.hypotheses[it->second].weight += h.weight;
  };

  for (const Hypothesis& h : current.hypotheses) {
    const std::size_t before = emitted;
    for (std::size_t pi = 0; pi < h.plans.size(); ++pi) {
      const Plan& plan = h.plans[pi];
      for (const NodePath& target : enabled_expansion_targets(lib, plan)) {
        const PlanNode& node = plan.node(target);
        if (lib.is_basic(node.label)) {
          if (node.label != o) continue;
          Hypothesis ext = h;
          ext.plans[pi] = observe_leaf(lib, plan, target, index);
          emit(std::move(ext));
        } else {
          for (const NodePtr& sub : paths.from(node.label)) {
            Hypothesis ext = h;
            ext.plans[pi] = replace_subtree(plan, target, sub);
            emit(std::move(ext));
          }
        }
      }
    }
    if (cfg.new_plan_allowed) {
      for (ActionId g : lib.goals()) {
        for (const NodePtr& sub : paths.from(g)) {
          Hypothesis ext = h;
          ext.plans.emplace_back(lib.identity(), sub);
          emit(std::move(ext));
        }
      }
    }
    if (stats && emitted == before) ++stats->dead;
  }

  if (next.hypotheses.empty()) throw UnexplainableObservation(index, lib.name(o));
  normalize_weights(next.hypotheses);

  if (cfg.max_hypotheses && next.hypotheses.size() > *cfg.max_hypotheses) {
    std::stable_sort(next.hypotheses.begin(), next.hypotheses.end(),
                     [](const Hypothesis& a, const Hypothesis& b) { return a.weight > b.weight; });
    next.hypotheses.resize(std::max<std::size_t>(*cfg.max_hypotheses, 1));
    next.truncated = true;
    normalize_weights(next.hypotheses);
  }
  return next;
}

HypothesisSet recognize(const PlanLibrary& lib, std::span<const ActionId> obs,
                        const RecognizerConfig& cfg) {
  if (cfg.max_hypotheses && *cfg.max_hypotheses == 0)
    throw ValidationError("max_hypotheses must be at least 1");
  HypothesisSet h = HypothesisSet::seed();
  for (ActionId o : obs) h = explain_step(lib, h, o, cfg);
  return h;
}

}  // namespace seqplan
