#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "seqplan/fixtures.hpp"
#include "seqplan/harness.hpp"
#include "seqplan/io.hpp"

namespace seqplan {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("seqplan-test-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<std::string> lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(Cli, RecognizeChemistry) {
  TempDir dir;
  write_text_file(dir.file("lib.json"), kChemistryLibraryJson);
  write_text_file(dir.file("obs.txt"), "mix_AB\n");
  CliOptions o;
  o.library = dir.file("lib.json");
  o.obs = dir.file("obs.txt");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_recognize(o, out, err), kExitOk);
  EXPECT_NE(out.str().find("hypotheses: 2"), std::string::npos) << out.str();
}

TEST(Cli, RecognizeMinimal) {
  TempDir dir;
  write_text_file(dir.file("lib.json"), R"({"basic": ["a"], "complex": ["g"], "goals": ["g"],
    "methods": [{"id": "g-a", "head": "g", "children": ["a"]}]})");
  write_text_file(dir.file("obs.txt"), "a\n");
  CliOptions o;
  o.library = dir.file("lib.json");
  o.obs = dir.file("obs.txt");
  o.json = true;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_recognize(o, out, err), kExitOk);
  const PlanLibrary lib = load_library(o.library);
  const HypothesisSet h = hypothesis_set_from_json(lib, out.str());
  ASSERT_EQ(h.size(), 1u);
  EXPECT_DOUBLE_EQ(h.hypotheses[0].weight, 1.0);
}

TEST(Cli, UnknownObservationExitsTwo) {
  TempDir dir;
  write_text_file(dir.file("lib.json"), kChemistryLibraryJson);
  write_text_file(dir.file("obs.txt"), "mix_AB\nmix_XY\n");
  CliOptions o;
  o.library = dir.file("lib.json");
  o.obs = dir.file("obs.txt");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_recognize(o, out, err), kExitUnexplainable);
  EXPECT_NE(err.str().find("index 1"), std::string::npos) << err.str();
}

TEST(Cli, MissingFileExitsOne) {
  CliOptions o;
  o.library = "/nonexistent/lib.json";
  o.obs = "/nonexistent/obs.txt";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_recognize(o, out, err), kExitInputError);
  EXPECT_FALSE(err.str().empty());
}

TEST(Cli, GenThenSprpWithScriptedFirstQuery) {
  TempDir dir;
  CliOptions g;
  g.out = dir.path().string();
  g.fixture = "fig2";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_gen(g, out, err), kExitOk) << err.str();

  const Fig2Fixture f = builtin_fig2();
  write_text_file(dir.file("p1.json"), plan_to_json(*f.library, f.p1));
  CliOptions s;
  s.library = dir.file("library.json");
  s.truth = dir.file("truth.json");
  s.hypotheses = dir.file("hypotheses.json");
  s.first_query = dir.file("p1.json");
  s.policies = {"random"};
  s.verify = true;
  std::ostringstream sout, serr;
  ASSERT_EQ(cmd_sprp(s, sout, serr), kExitOk) << serr.str();
  EXPECT_NE(sout.str().find("query 1: G[g-main](X[x-first](a@0), Y[y-c](c@1), Z) -> yes (3 left)"),
            std::string::npos)
      << sout.str();
  EXPECT_NE(sout.str().find("verify: ok"), std::string::npos);
}

TEST(Cli, SprpOnSingletonMakesNoQueries) {
  TempDir dir;
  write_text_file(dir.file("lib.json"), R"({"basic": ["a"], "complex": ["g"], "goals": ["g"],
    "methods": [{"id": "g-a", "head": "g", "children": ["a"]}]})");
  write_text_file(dir.file("obs.txt"), "a\n");
  write_text_file(dir.file("truth.json"),
                  R"([{"label": "g", "method": "g-a", "children": [{"label": "a", "observed": 0}]}])");
  CliOptions s;
  s.library = dir.file("lib.json");
  s.obs = dir.file("obs.txt");
  s.truth = dir.file("truth.json");
  s.verify = true;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_sprp(s, out, err), kExitOk) << err.str();
  EXPECT_NE(out.str().find("queries: 0"), std::string::npos) << out.str();
}

TEST(Cli, SprpInconsistentOracleExitsThree) {
  TempDir dir;
  const Fig2Fixture f = builtin_fig2();
  write_text_file(dir.file("lib.json"), kFig2LibraryJson);
  HypothesisSet h0;
  h0.hypotheses = {Hypothesis{{f.p1}, 0.5}, Hypothesis{{f.p1, f.p1}, 0.5}};
  write_text_file(dir.file("h0.json"), hypothesis_set_to_json(*f.library, h0));
  write_text_file(dir.file("truth.json"),
                  R"([{"label": "Z", "method": "z-w", "children": [{"label": "w"}]}])");
  CliOptions s;
  s.library = dir.file("lib.json");
  s.hypotheses = dir.file("h0.json");
  s.truth = dir.file("truth.json");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_sprp(s, out, err), kExitInconsistentOracle);
}

TEST(Cli, SprpVerifiesGeneratedInstances) {
  TempDir dir;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    CliOptions g;
    g.out = dir.path().string();
    g.seed = seed;
    g.gen.obs_len = 3 + seed % 3;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_gen(g, out, err), kExitOk) << err.str();
    CliOptions s;
    s.library = dir.file("library.json");
    s.obs = dir.file("observations.txt");
    s.truth = dir.file("truth.json");
    s.policies = {std::string(to_string(kAllPolicies[seed % 4]))};
    s.seed = seed;
    s.verify = true;
    s.strict_observations = true;
    std::ostringstream sout, serr;
    ASSERT_EQ(cmd_sprp(s, sout, serr), kExitOk) << "seed " << seed << "\n" << serr.str() << sout.str();
  }
}

TEST(Experiment, OneInstanceOnePolicyOneRow) {
  TempDir dir;
  CliOptions o;
  o.out = dir.path().string();
  o.instances = 1;
  o.policies = {"entropy"};
  o.obs_lengths = {4};
  std::ostringstream out, err;
  ASSERT_EQ(cmd_experiment(o, out, err), kExitOk) << err.str();
  const auto rows = lines(dir.file("rows.csv"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "instance,policy,obs_len,h0_size,queries,remaining_series");
  EXPECT_EQ(lines(dir.file("summary.csv"))[0], "policy,obs_len,mean_queries,sd_queries,mean_h0");
}

TEST(Experiment, DeterministicAndSummaryConsistent) {
  ExperimentSpec spec;
  spec.instances = 6;
  spec.obs_lengths = {3, 5};
  spec.seed = 9;
  const ExperimentResult a = run_experiment(spec);
  spec.jobs = 3;
  const ExperimentResult b = run_experiment(spec);
  ASSERT_TRUE(a.failures.empty());
  std::ostringstream ra, rb;
  write_rows_csv(ra, a.rows);
  write_rows_csv(rb, b.rows);
  EXPECT_EQ(ra.str(), rb.str());

  for (const auto& r : a.rows) {
    ASSERT_FALSE(r.remaining.empty());
    EXPECT_DOUBLE_EQ(r.remaining.front(), 1.0);
    for (std::size_t i = 1; i < r.remaining.size(); ++i)
      EXPECT_LE(r.remaining[i], r.remaining[i - 1]);
  }
  for (const auto& s : summarize(a.rows)) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : a.rows)
      if (r.policy == s.policy && r.obs_len == s.obs_len) {
        sum += static_cast<double>(r.queries);
        ++n;
      }
    EXPECT_EQ(n, s.runs);
    EXPECT_NEAR(s.mean_queries, sum / static_cast<double>(n), 1e-12);
  }
}

TEST(Experiment, CurvesCarryFinalFractionForward) {
  std::vector<ExperimentRow> rows(2);
  rows[0].policy = rows[1].policy = PolicyKind::random;
  rows[0].obs_len = rows[1].obs_len = 3;
  rows[0].remaining = {1.0, 0.5};
  rows[1].remaining = {1.0, 0.75, 0.25};
  const auto curve = mean_remaining_curve(rows, PolicyKind::random, 3);
  EXPECT_EQ(curve, (std::vector<double>{1.0, 0.625, 0.375}));
}

TEST(Experiment, WinRates) {
  std::vector<ExperimentRow> rows;
  auto add = [&](std::size_t inst, PolicyKind k, std::size_t q) {
    ExperimentRow r;
    r.instance = inst;
    r.policy = k;
    r.obs_len = 7;
    r.queries = q;
    rows.push_back(r);
  };
  add(0, PolicyKind::entropy, 2);
  add(0, PolicyKind::random, 4);
  add(1, PolicyKind::entropy, 3);
  add(1, PolicyKind::random, 3);
  EXPECT_DOUBLE_EQ(win_rate(rows, PolicyKind::entropy, PolicyKind::random, 7), 0.5);
  EXPECT_DOUBLE_EQ(win_rate(rows, PolicyKind::random, PolicyKind::entropy, 7), 0.0);
}

}  // namespace
}  // namespace seqplan
