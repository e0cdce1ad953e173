#include "seqplan/domain_gen.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "seqplan/errors.hpp"
#include "seqplan/recognizer.hpp"
#include "seqplan/seeding.hpp"

namespace seqplan {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

LibraryDraft draft_library(const GenParams& params) {
  std::mt19937_64 rng(derive_seed(params.seed, {0}));
  LibraryDraft d;
  // strata[0] holds basic actions, strata[depth] the goals.
  std::vector<std::vector<std::string>> strata(params.depth + 1);
  for (std::size_t i = 0; i < params.num_basic; ++i) strata[0].push_back("b" + std::to_string(i));
  for (std::size_t level = 1; level <= params.depth; ++level) {
    const bool top = level == params.depth;
    const std::size_t count = top ? params.num_goals : params.complex_per_level;
    for (std::size_t i = 0; i < count; ++i)
      strata[level].push_back(top ? "goal" + std::to_string(i)
                                  : "c" + std::to_string(level) + "_" + std::to_string(i));
  }
  d.basic = strata[0];
  for (std::size_t level = 1; level <= params.depth; ++level)
    d.complex.insert(d.complex.end(), strata[level].begin(), strata[level].end());
  d.goals = strata[params.depth];

  for (std::size_t level = 1; level <= params.depth; ++level) {
    for (const auto& head : strata[level]) {
      const std::size_t methods = uniform(rng, 1, params.branching);
      for (std::size_t mi = 0; mi < methods; ++mi) {
        LibraryDraft::Method m;
        m.id = head + "-m" + std::to_string(mi);
        m.head = head;
        const std::size_t k = uniform(rng, params.min_constituents, params.max_constituents);
        for (std::size_t c = 0; c < k; ++c) {
          // The first constituent comes from the stratum directly below so
          // every method reaches the full depth; the rest from any lower one.
          const std::size_t from = c == 0 ? level - 1 : uniform(rng, 0, level - 1);
          const auto& pool = strata[from];
          m.children.push_back(pool[uniform(rng, 0, pool.size() - 1)]);
        }
        std::bernoulli_distribution ordered(params.order_probability);
        for (std::size_t c = 0; c + 1 < k; ++c)
          if (ordered(rng)) m.order.emplace_back(c, c + 1);
        d.methods.push_back(std::move(m));
      }
    }
  }
  return d;
}

NodePtr sample_complete(const PlanLibrary& lib, ActionId label, std::mt19937_64& rng) {
  auto n = std::make_shared<PlanNode>();
  n->label = label;
  if (lib.is_basic(label)) return n;
  const auto methods = lib.methods_for(label);
  const MethodId m = methods[uniform(rng, 0, methods.size() - 1)];
  n->method = m;
  for (ActionId c : lib.method(m).constituents) n->children.push_back(sample_complete(lib, c, rng));
  return n;
}

std::size_t leaf_count(const PlanNode& n) {
  if (!n.expanded()) return 1;
  std::size_t total = 0;
  for (const auto& c : n.children) total += leaf_count(*c);
  return total;
}

NodePtr drop_observations_from(const NodePtr& n, std::size_t length) {
  if (!n->expanded()) {
    if (n->observed_at && *n->observed_at >= length) {
      auto copy = std::make_shared<PlanNode>(*n);
      copy->observed_at.reset();
      return copy;
    }
    return n;
  }
  auto copy = std::make_shared<PlanNode>(*n);
  for (auto& c : copy->children) c = drop_observations_from(c, length);
  return copy;
}

}  // namespace

void validate_params(const GenParams& p) {
  if (p.num_goals < 1) throw ValidationError("num_goals must be at least 1");
  if (p.branching < 1) throw ValidationError("branching must be at least 1");
  if (p.depth < 1) throw ValidationError("depth must be at least 1");
  if (p.num_basic < 1) throw ValidationError("num_basic must be at least 1 (no basic actions)");
  if (p.obs_len < 1) throw ValidationError("obs_len must be at least 1");
  if (p.min_constituents < 1 || p.min_constituents > p.max_constituents)
    throw ValidationError("constituent bounds must satisfy 1 <= min <= max");
  if (p.depth > 1 && p.complex_per_level < 1)
    throw ValidationError("complex_per_level must be at least 1 when depth > 1");
  if (p.max_truth_goals < 1) throw ValidationError("max_truth_goals must be at least 1");
  if (!(p.order_probability >= 0.0 && p.order_probability <= 1.0))
    throw ValidationError("order_probability must lie in [0, 1]");
}

PlanLibrary gen_library(const GenParams& params) {
  validate_params(params);
  return PlanLibrary::build(draft_library(params));
}

Instance gen_instance(const GenParams& params) {
  Instance inst;
  inst.library = std::make_shared<const PlanLibrary>(gen_library(params));
  const PlanLibrary& lib = *inst.library;
  std::mt19937_64 rng(derive_seed(params.seed, {1}));

  // Intended goals: distinct while possible, repeating only if the plans are
  // too short to produce obs_len observations.
  std::vector<ActionId> goals(lib.goals().begin(), lib.goals().end());
  std::shuffle(goals.begin(), goals.end(), rng);
  const std::size_t wanted = uniform(rng, 1, std::min(params.max_truth_goals, goals.size()));
  std::vector<NodePtr> plans;
  std::size_t leaves = 0;
  for (std::size_t i = 0; i < wanted || leaves < params.obs_len; ++i) {
    const ActionId g = i < goals.size() ? goals[i] : goals[uniform(rng, 0, goals.size() - 1)];
    plans.push_back(sample_complete(lib, g, rng));
    leaves += leaf_count(*plans.back());
  }

  // Random linear extension honouring every ordering constraint: repeatedly
  // execute a uniformly chosen enabled pending leaf.
  std::vector<Plan> executing;
  for (auto& p : plans) executing.emplace_back(lib.identity(), p);
  for (std::size_t t = 0; t < leaves; ++t) {
    std::vector<std::pair<std::size_t, NodePath>> ready;
    for (std::size_t pi = 0; pi < executing.size(); ++pi)
      for (auto& path : enabled_expansion_targets(lib, executing[pi]))
        ready.emplace_back(pi, std::move(path));
    if (ready.empty()) throw Error("generator produced an unschedulable plan");
    auto& [pi, path] = ready[uniform(rng, 0, ready.size() - 1)];
    inst.schedule.push_back(executing[pi].node(path).label);
    executing[pi] = observe_leaf(lib, executing[pi], path, t);
  }
  inst.execution.plans = std::move(executing);
  return restrict_to_prefix(inst, params.obs_len);
}

Instance restrict_to_prefix(const Instance& inst, std::size_t length) {
  if (length > inst.schedule.size())
    throw ValidationError("instance schedule has only " + std::to_string(inst.schedule.size()) +
                          " actions");
  Instance out = inst;
  out.observations.assign(inst.schedule.begin(),
                          inst.schedule.begin() + static_cast<std::ptrdiff_t>(length));
  out.truth.plans.clear();
  out.truth.weight = 1.0;
  for (const auto& p : inst.execution.plans) {
    Plan cut(p.library(), drop_observations_from(p.root_ptr(), length));
    if (observation_count(cut.root()) > 0) out.truth.plans.push_back(std::move(cut));
  }
  return out;
}

}  // namespace seqplan
