#include "seqplan/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "seqplan/errors.hpp"
#include "seqplan/fixtures.hpp"
#include "seqplan/io.hpp"
#include "seqplan/seeding.hpp"

namespace seqplan {

HypothesisSet brute_force_final_set(const HypothesisSet& initial, const Hypothesis& truth,
                                    RelationOptions relations) {
  HypothesisSet out;
  out.observations = initial.observations;
  out.truncated = initial.truncated;
  for (const Hypothesis& h : initial.hypotheses)
    if (hypothesis_refines(h, truth, relations)) out.hypotheses.push_back(h);
  normalize_weights(out.hypotheses);
  return out;
}

bool same_hypotheses(const HypothesisSet& a, const HypothesisSet& b) {
  if (a.size() != b.size()) return false;
  auto keys = [](const HypothesisSet& s) {
    std::vector<std::string> k;
    k.reserve(s.size());
    for (const auto& h : s.hypotheses) k.push_back(hypothesis_key(h).text);
    std::sort(k.begin(), k.end());
    return k;
  };
  return keys(a) == keys(b);
}

namespace {

struct InstanceOutcome {
  std::vector<ExperimentRow> rows;
  RecognitionRecord recognition;
  std::vector<std::string> failures;
};

InstanceOutcome run_instance(const ExperimentSpec& spec, std::size_t index) {
  InstanceOutcome res;
  res.recognition.instance = index;
  const std::size_t max_len =
      spec.obs_lengths.empty()
          ? 0
          : *std::max_element(spec.obs_lengths.begin(), spec.obs_lengths.end());

  auto fail = [&](const std::string& what) {
    res.failures.push_back("instance " + std::to_string(index) + ": " + what);
  };

  Instance inst;
  try {
    GenParams params = spec.generator;
    params.seed = derive_seed(spec.seed, {index});
    params.obs_len = std::max(max_len, params.obs_len);
    inst = gen_instance(params);
  } catch (const std::exception& e) {
    fail(std::string("generation failed: ") + e.what());
    return res;
  }
  const PlanLibrary& lib = *inst.library;

  // Recognize incrementally, keeping the snapshot at each requested length.
  std::map<std::size_t, HypothesisSet> snapshots;
  HypothesisSet h = HypothesisSet::seed();
  try {
    for (std::size_t i = 0; i < max_len; ++i) {
      ExplainStats stats;
      h = explain_step(lib, h, inst.schedule.at(i), spec.recognizer, &stats);
      res.recognition.counts.push_back(h.size());
      res.recognition.deaths.push_back(stats.dead > 0);
      if (std::find(spec.obs_lengths.begin(), spec.obs_lengths.end(), i + 1) !=
          spec.obs_lengths.end())
        snapshots.emplace(i + 1, h);
    }
  } catch (const std::exception& e) {
    fail(std::string("recognition failed: ") + e.what());
    return res;
  }

  for (PolicyKind kind : spec.policies) {
    for (std::size_t len : spec.obs_lengths) {
      const HypothesisSet& h0 = snapshots.at(len);
      if (h0.truncated) {
        fail("hypothesis cap reached at length " + std::to_string(len));
        continue;
      }
      const Instance view = restrict_to_prefix(inst, len);
      QueryOracle oracle{view.truth, spec.relations};
      for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
        Policy policy(kind, derive_seed(spec.seed, {index, len, rep}));
        try {
          SprpResult r = run_sprp(lib, h0, oracle, policy, spec.relations);
          ExperimentRow row;
          row.instance = index;
          row.policy = kind;
          row.obs_len = len;
          row.repetition = rep;
          row.h0_size = h0.size();
          row.queries = r.trace.queries();
          row.final_size = r.final_set.size();
          row.remaining = r.trace.remaining_fraction();
          res.rows.push_back(std::move(row));
        } catch (const std::exception& e) {
          fail(std::string(to_string(kind)) + " at length " + std::to_string(len) + ": " +
               e.what());
        }
      }
    }
  }
  return res;
}

std::size_t policy_rank(PolicyKind k) { return static_cast<std::size_t>(k); }

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::vector<std::pair<PolicyKind, std::size_t>> groups(const std::vector<ExperimentRow>& rows) {
  std::vector<std::pair<PolicyKind, std::size_t>> g;
  for (const auto& r : rows) g.emplace_back(r.policy, r.obs_len);
  std::sort(g.begin(), g.end(), [](const auto& a, const auto& b) {
    return std::make_pair(policy_rank(a.first), a.second) <
           std::make_pair(policy_rank(b.first), b.second);
  });
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  validate_params(spec.generator);
  if (spec.obs_lengths.empty()) throw ValidationError("no observation lengths given");
  for (std::size_t len : spec.obs_lengths)
    if (len == 0) throw ValidationError("observation length must be positive");
  if (spec.repetitions == 0) throw ValidationError("repetitions must be positive");

  std::vector<InstanceOutcome> outcomes(spec.instances);
  const std::size_t workers = std::max<std::size_t>(1, std::min(spec.jobs, spec.instances));
  if (workers == 1) {
    for (std::size_t i = 0; i < spec.instances; ++i) outcomes[i] = run_instance(spec, i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < spec.instances; i = next++)
          outcomes[i] = run_instance(spec, i);
      });
    for (auto& t : pool) t.join();
  }

  ExperimentResult result;
  for (auto& o : outcomes) {
    std::sort(o.rows.begin(), o.rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
      return std::make_tuple(policy_rank(a.policy), a.obs_len, a.repetition) <
             std::make_tuple(policy_rank(b.policy), b.obs_len, b.repetition);
    });
    for (auto& r : o.rows) result.rows.push_back(std::move(r));
    result.recognition.push_back(std::move(o.recognition));
    for (auto& f : o.failures) result.failures.push_back(std::move(f));
  }
  return result;
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRow>& rows) {
  std::vector<SummaryRow> out;
  for (auto [kind, len] : groups(rows)) {
    std::vector<double> q, h0;
    for (const auto& r : rows)
      if (r.policy == kind && r.obs_len == len) {
        q.push_back(static_cast<double>(r.queries));
        h0.push_back(static_cast<double>(r.h0_size));
      }
    const double n = static_cast<double>(q.size());
    double mean = 0.0, mean_h0 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      mean += q[i];
      mean_h0 += h0[i];
    }
    mean /= n;
    mean_h0 /= n;
    double ss = 0.0;
    for (double v : q) ss += (v - mean) * (v - mean);
    const double sd = q.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    out.push_back(SummaryRow{kind, len, q.size(), mean, sd, mean_h0});
  }
  return out;
}

std::vector<double> mean_remaining_curve(const std::vector<ExperimentRow>& rows,
                                         PolicyKind policy, std::size_t obs_len) {
  std::vector<const ExperimentRow*> sel;
  std::size_t longest = 0;
  for (const auto& r : rows)
    if (r.policy == policy && r.obs_len == obs_len && !r.remaining.empty()) {
      sel.push_back(&r);
      longest = std::max(longest, r.remaining.size());
    }
  std::vector<double> curve(longest, 0.0);
  for (const ExperimentRow* r : sel)
    for (std::size_t i = 0; i < longest; ++i)
      curve[i] += i < r->remaining.size() ? r->remaining[i] : r->remaining.back();
  for (double& v : curve) v /= static_cast<double>(sel.size());
  return curve;
}

double win_rate(const std::vector<ExperimentRow>& rows, PolicyKind a, PolicyKind b,
                std::size_t obs_len) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> qa;
  for (const auto& r : rows)
    if (r.policy == a && r.obs_len == obs_len) qa[{r.instance, r.repetition}] = r.queries;
  std::size_t pairs = 0, wins = 0;
  for (const auto& r : rows) {
    if (r.policy != b || r.obs_len != obs_len) continue;
    auto it = qa.find({r.instance, r.repetition});
    if (it == qa.end()) continue;
    ++pairs;
    if (it->second < r.queries) ++wins;
  }
  return pairs ? static_cast<double>(wins) / static_cast<double>(pairs) : 0.0;
}

void write_rows_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "instance,policy,obs_len,h0_size,queries,remaining_series\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << to_string(r.policy) << ',' << r.obs_len << ',' << r.h0_size
        << ',' << r.queries << ',';
    for (std::size_t i = 0; i < r.remaining.size(); ++i)
      out << (i ? ";" : "") << fmt(r.remaining[i]);
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& summary) {
  out << "policy,obs_len,mean_queries,sd_queries,mean_h0\n";
  for (const auto& s : summary)
    out << to_string(s.policy) << ',' << s.obs_len << ',' << fmt(s.mean_queries) << ','
        << fmt(s.sd_queries) << ',' << fmt(s.mean_h0) << '\n';
}

void write_curves_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "policy,obs_len,query_index,mean_remaining\n";
  for (auto [kind, len] : groups(rows)) {
    const auto curve = mean_remaining_curve(rows, kind, len);
    for (std::size_t i = 0; i < curve.size(); ++i)
      out << to_string(kind) << ',' << len << ',' << i << ',' << fmt(curve[i]) << '\n';
  }
}

void write_winrates_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "obs_len,policy_a,policy_b,win_rate_a,win_rate_b,tie_rate\n";
  std::vector<std::size_t> lengths;
  std::vector<PolicyKind> kinds;
  for (const auto& r : rows) {
    lengths.push_back(r.obs_len);
    if (std::find(kinds.begin(), kinds.end(), r.policy) == kinds.end()) kinds.push_back(r.policy);
  }
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  std::sort(kinds.begin(), kinds.end(),
            [](PolicyKind a, PolicyKind b) { return policy_rank(a) < policy_rank(b); });
  for (std::size_t len : lengths)
    for (std::size_t i = 0; i < kinds.size(); ++i)
      for (std::size_t j = i + 1; j < kinds.size(); ++j) {
        const double wa = win_rate(rows, kinds[i], kinds[j], len);
        const double wb = win_rate(rows, kinds[j], kinds[i], len);
        out << len << ',' << to_string(kinds[i]) << ',' << to_string(kinds[j]) << ','
            << fmt(wa) << ',' << fmt(wb) << ',' << fmt(1.0 - wa - wb) << '\n';
      }
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

std::shared_ptr<const PlanLibrary> require_library(const CliOptions& opts) {
  if (opts.library.empty()) throw ValidationError("--library is required");
  return std::make_shared<const PlanLibrary>(load_library(opts.library));
}

ObservationSequence require_observations(const PlanLibrary& lib, const CliOptions& opts) {
  if (opts.obs.empty()) throw ValidationError("--obs is required");
  return parse_observations(lib, read_text_file(opts.obs));
}

RecognizerConfig recognizer_config(const CliOptions& opts) {
  RecognizerConfig cfg;
  cfg.max_hypotheses = opts.max_hypotheses;
  return cfg;
}

std::vector<PolicyKind> policies_from(const CliOptions& opts) {
  std::vector<PolicyKind> out;
  for (const auto& name : opts.policies) {
    auto k = parse_policy_kind(name);
    if (!k) throw ValidationError("unknown policy '" + name + "'");
    out.push_back(*k);
  }
  return out;
}

void print_set(const PlanLibrary& lib, const HypothesisSet& set, std::ostream& out) {
  out << "hypotheses: " << set.size() << '\n';
  out << "observations: " << set.observations << '\n';
  if (set.truncated) out << "truncated: yes\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Hypothesis& h = set.hypotheses[i];
    out << "[" << i << "] weight " << std::setprecision(6) << h.weight << '\n';
    for (const Plan& p : h.plans) out << "    " << plan_to_string(lib, p) << '\n';
  }
}

/// Runs `body`, mapping library errors to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UnexplainableObservation& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnexplainable;
  } catch (const InconsistentOracle& e) {
    err << "error: " << e.what() << '\n';
    return kExitInconsistentOracle;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace

int cmd_recognize(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto lib = require_library(opts);
    const auto obs = require_observations(*lib, opts);
    const HypothesisSet set = recognize(*lib, obs, recognizer_config(opts));
    if (opts.json)
      out << hypothesis_set_to_json(*lib, set) << '\n';
    else
      print_set(*lib, set, out);
    return int{kExitOk};
  });
}

int cmd_sprp(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto lib = require_library(opts);
    if (opts.truth.empty()) throw ValidationError("--truth is required");
    const Hypothesis truth = hypothesis_from_json(*lib, read_text_file(opts.truth));
    const RelationOptions rel{opts.strict_observations};

    HypothesisSet h0;
    if (!opts.hypotheses.empty()) {
      h0 = hypothesis_set_from_json(*lib, read_text_file(opts.hypotheses));
    } else {
      const auto obs = require_observations(*lib, opts);
      if (!describes(truth, obs))
        throw ValidationError("truth does not carry the given observations");
      h0 = recognize(*lib, obs, recognizer_config(opts));
      if (h0.truncated)
        throw ValidationError("hypothesis cap reached; rerun with a larger --max-hypotheses");
    }

    auto kinds = policies_from(opts);
    if (kinds.size() > 1) throw ValidationError("sprp takes a single --policy");
    const PolicyKind kind = kinds.empty() ? PolicyKind::entropy : kinds.front();

    Selector select = Policy(kind, opts.seed);
    if (!opts.first_query.empty()) {
      const Plan first = plan_from_json(*lib, read_text_file(opts.first_query));
      select = [first, policy = Policy(kind, opts.seed)](PlanPool& pool, const IndexedSet& set,
                                                         const ClosedSet& closed,
                                                         std::size_t step) {
        return step == 0 ? pool.intern(first) : policy(pool, set, closed, step);
      };
    }
    const SprpResult r = run_sprp(*lib, h0, QueryOracle{truth, rel}, select, rel);

    if (opts.json) {
      nlohmann::json j;
      j["policy"] = std::string(to_string(kind));
      j["seed"] = opts.seed;
      j["initial_size"] = r.trace.initial_size;
      j["queries"] = r.trace.queries();
      j["steps"] = nlohmann::json::array();
      for (const auto& s : r.trace.steps)
        j["steps"].push_back({{"plan", nlohmann::json::parse(s.plan)},
                              {"answer", s.answer},
                              {"remaining", s.size_after}});
      j["final"] = nlohmann::json::parse(hypothesis_set_to_json(*lib, r.final_set, -1));
      out << j.dump(2) << '\n';
    } else {
      out << "policy: " << to_string(kind) << "  seed: " << opts.seed << '\n';
      out << "initial hypotheses: " << r.trace.initial_size << '\n';
      for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
        const auto& s = r.trace.steps[i];
        const Plan p = plan_from_json(*lib, s.plan);
        out << "query " << i + 1 << ": " << plan_to_string(*lib, p) << " -> "
            << (s.answer ? "yes" : "no") << " (" << s.size_after << " left)\n";
      }
      out << "queries: " << r.trace.queries() << '\n';
      print_set(*lib, r.final_set, out);
    }

    if (opts.verify) {
      const HypothesisSet expected = brute_force_final_set(h0, truth, rel);
      const bool ok = same_hypotheses(expected, r.final_set);
      out << "verify: " << (ok ? "ok" : "MISMATCH") << " (expected " << expected.size()
          << ", got " << r.final_set.size() << ")\n";
      if (!ok) return int{kExitInputError};
    }
    return int{kExitOk};
  });
}

int cmd_gen(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.out.empty()) throw ValidationError("--out is required");
    namespace fs = std::filesystem;
    fs::create_directories(opts.out);
    const fs::path dir(opts.out);

    auto write_instance = [&](const Instance& inst) {
      write_text_file((dir / "library.json").string(), serialize_library(*inst.library));
      write_text_file((dir / "observations.txt").string(),
                      serialize_observations(*inst.library, inst.observations));
      write_text_file((dir / "truth.json").string(),
                      hypothesis_to_json(*inst.library, inst.truth, 2) + "\n");
    };

    if (opts.fixture.empty()) {
      GenParams params = opts.gen;
      params.seed = opts.seed;
      write_instance(gen_instance(params));
    } else if (opts.fixture == "chemistry") {
      write_instance(builtin_chemistry().instances.at("pairwise"));
    } else if (opts.fixture == "fig2") {
      const Fig2Fixture f = builtin_fig2();
      Instance inst;
      inst.library = f.library;
      inst.truth = f.truth;
      inst.observations = f.observations;
      write_instance(inst);
      write_text_file((dir / "hypotheses.json").string(),
                      hypothesis_set_to_json(*f.library, f.hypotheses) + "\n");
    } else {
      throw ValidationError("unknown fixture '" + opts.fixture + "'");
    }
    out << "wrote " << dir.string() << '\n';
    return int{kExitOk};
  });
}

int cmd_experiment(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.out.empty()) throw ValidationError("--out is required");
    ExperimentSpec spec;
    spec.generator = opts.gen;
    spec.instances = opts.instances;
    if (!opts.policies.empty()) spec.policies = policies_from(opts);
    if (!opts.obs_lengths.empty()) spec.obs_lengths = opts.obs_lengths;
    spec.repetitions = opts.reps;
    spec.seed = opts.seed;
    spec.recognizer = recognizer_config(opts);
    spec.relations = RelationOptions{opts.strict_observations};
    spec.jobs = opts.jobs;

    const ExperimentResult result = run_experiment(spec);
    const auto summary = summarize(result.rows);

    namespace fs = std::filesystem;
    fs::create_directories(opts.out);
    const fs::path dir(opts.out);
    auto emit = [&](const char* name, auto&& writer) {
      std::ofstream f(dir / name);
      if (!f) throw Error("cannot write " + (dir / name).string());
      writer(f);
    };
    emit("rows.csv", [&](std::ostream& f) { write_rows_csv(f, result.rows); });
    emit("summary.csv", [&](std::ostream& f) { write_summary_csv(f, summary); });
    emit("curves.csv", [&](std::ostream& f) { write_curves_csv(f, result.rows); });
    emit("winrates.csv", [&](std::ostream& f) { write_winrates_csv(f, result.rows); });
    emit("recognition.csv", [&](std::ostream& f) {
      f << "instance,step,hypotheses,death\n";
      for (const auto& rec : result.recognition)
        for (std::size_t i = 0; i < rec.counts.size(); ++i)
          f << rec.instance << ',' << i + 1 << ',' << rec.counts[i] << ','
            << (rec.deaths[i] ? 1 : 0) << '\n';
    });

    out << std::left << std::setw(10) << "policy" << std::setw(8) << "obs_len" << std::setw(14)
        << "mean_queries" << std::setw(12) << "sd" << "mean_h0\n";
    for (const auto& s : summary)
      out << std::setw(10) << to_string(s.policy) << std::setw(8) << s.obs_len << std::setw(14)
          << fmt(s.mean_queries, 4) << std::setw(12) << fmt(s.sd_queries, 4)
          << fmt(s.mean_h0, 4) << '\n';
    for (const auto& f : result.failures) err << "failure: " << f << '\n';
    return result.failures.empty() ? int{kExitOk} : int{kExitInputError};
  });
}

}  // namespace seqplan
