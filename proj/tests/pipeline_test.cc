//
// Copyright 2026 The ctiaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "ctiaug/pipeline.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "absl/strings/str_split.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace ctiaug {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

const std::string kSource = CTIAUG_SOURCE_DIR;

fs::path Scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ctiaug_pipeline_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json ToyJson(const fs::path& out) {
  return {{"seed", 13},
          {"output_dir", out.string()},
          {"dataset", {{"path", kSource + "/data/toy_corpus.csv"}}},
          {"lexicon",
           {{"synonyms", kSource + "/data/synonyms.tsv"},
            {"frequencies", kSource + "/data/zipf.tsv"}}},
          {"generation", {{"use_mock", true}}},
          {"parallelism", 2}};
}

RunConfig Toy(const fs::path& out) { return *RunConfigFromJson(ToyJson(out)); }

std::vector<nlohmann::json> ReadJsonl(const fs::path& path) {
  std::vector<nlohmann::json> rows;
  const std::vector<std::string> lines =
      absl::StrSplit(Slurp(path), '\n', absl::SkipEmpty());
  for (const std::string& line : lines) {
    rows.push_back(nlohmann::json::parse(line));
  }
  return rows;
}

TEST(ConfigTest, UnknownKeysAreRejected) {
  nlohmann::json j = ToyJson("/tmp/x");
  j["clusterr"] = nlohmann::json::object();
  auto c = RunConfigFromJson(j);
  ASSERT_FALSE(c.ok());
  EXPECT_THAT(std::string(c.status().message()), HasSubstr("clusterr"));
  j = ToyJson("/tmp/x");
  j["generation"]["temprature"] = 0.5;
  EXPECT_FALSE(RunConfigFromJson(j).ok());
}

TEST(ConfigTest, RangeChecksAndRoundTrip) {
  nlohmann::json j = ToyJson("/tmp/x");
  j["split"] = {{"test_fraction", 1.5}};
  EXPECT_FALSE(RunConfigFromJson(j).ok());
  j = ToyJson("/tmp/x");
  j["baselines"] = {{"intensity", -0.1}};
  EXPECT_FALSE(RunConfigFromJson(j).ok());
  j = ToyJson("/tmp/x");
  j["cluster"] = {{"min_cluster_size", "five"}};
  EXPECT_FALSE(RunConfigFromJson(j).ok());

  const RunConfig c = Toy("/tmp/x");
  auto again = RunConfigFromJson(nlohmann::json::parse(RunConfigToJson(c).dump()));
  ASSERT_TRUE(again.ok()) << again.status();
  EXPECT_EQ(RunConfigToJson(*again), RunConfigToJson(c));
}

TEST(ConfigTest, LoadFromFile) {
  const fs::path dir = Scratch("load");
  std::ofstream(dir / "c.json") << ToyJson(dir).dump();
  auto c = LoadRunConfig((dir / "c.json").string());
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->seed, 13u);
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_FALSE(LoadRunConfig((dir / "bad.json").string()).ok());
  EXPECT_EQ(LoadRunConfig((dir / "none.json").string()).status().code(),
            absl::StatusCode::kNotFound);
}

TEST(MethodTest, Names) {
  for (auto m : {Method::kSynthCti, Method::kSynonymReplacement, Method::kRandomSwap,
                 Method::kCharNoise}) {
    EXPECT_EQ(*ParseMethod(MethodName(m)), m);
  }
  EXPECT_FALSE(ParseMethod("eda").ok());
}

TEST(StatsTest, BudgetOnTrainingSplit) {
  auto r = RunStats(Toy(Scratch("stats")));
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->corpus.m, 12);
  int corpus_total = 0;
  for (const auto& [l, n] : r->corpus.counts) corpus_total += n;
  EXPECT_EQ(corpus_total, 175);
  for (const auto& [label, g] : r->budget.quotas) {
    const int n = r->train.counts.at(label);
    EXPECT_EQ(g, std::max(0, static_cast<int>(std::ceil(r->train.mu)) - n)) << label;
  }
  EXPECT_THAT(StatsTable(*r), HasSubstr("T"));
  EXPECT_TRUE(StatsToJson(*r)["train"].contains("budget"));
}

TEST(SplitTest, WritesFiles) {
  const fs::path dir = Scratch("split");
  auto s = RunSplit(Toy(dir));
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_EQ(ReadJsonl(dir / "train.jsonl").size(), s->train.size());
  EXPECT_EQ(ReadJsonl(dir / "test.jsonl").size(), s->test.size());
  EXPECT_EQ(s->train.size() + s->test.size(), 175u);
}

TEST(BaselineRunTest, ManifestCountsAndLayout) {
  const fs::path dir = Scratch("baseline");
  auto stats = RunStats(Toy(dir));
  ASSERT_TRUE(stats.ok());
  int budget = 0;
  for (const auto& [l, g] : stats->budget.quotas) budget += g;

  auto r = RunAugment(Toy(dir), Method::kRandomSwap);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_TRUE(r->complete);
  const auto rows = ReadJsonl(dir / "manifest.jsonl");
  ASSERT_EQ(rows.size(), r->manifest.size());
  int synthetic = 0;
  std::string phase = "train";
  for (const auto& row : rows) {
    const std::string split = row["split"];
    if (split == "synthetic") {
      ++synthetic;
      EXPECT_EQ(row["method"], "random_swap");
      EXPECT_TRUE(row.contains("source_index"));
      EXPECT_NE(phase, "test");
      phase = "synthetic";
    } else if (split == "test") {
      phase = "test";
    } else {
      EXPECT_EQ(phase, "train");
    }
  }
  EXPECT_EQ(synthetic, budget);
  EXPECT_FALSE(fs::exists(dir / "prompts"));
  const auto report = nlohmann::json::parse(Slurp(dir / "run_report.json"));
  EXPECT_EQ(report["method"], "random_swap");
}

TEST(EvaluateRunTest, NoSyntheticRowsWritesHeaderOnly) {
  const fs::path dir = Scratch("eval_empty");
  ASSERT_TRUE(RunSplit(Toy(dir)).ok());
  // A manifest with originals only.
  std::ofstream out(dir / "manifest.jsonl");
  out << Slurp(dir / "train.jsonl") << Slurp(dir / "test.jsonl");
  out.close();
  auto q = RunEvaluate(Toy(dir));
  ASSERT_TRUE(q.ok()) << q.status();
  EXPECT_TRUE(q->empty());
  EXPECT_EQ(Slurp(dir / "diversity.csv"),
            "technique_id,cosine_distance,self_bleu,strength\n");
}

TEST(EvaluateRunTest, MissingManifest) {
  EXPECT_FALSE(RunEvaluate(Toy(Scratch("eval_missing"))).ok());
}

int RunCli(const std::string& args) {
  const std::string cmd =
      std::string(CTIAUG_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, StatsSucceeds) {
  const fs::path dir = Scratch("cli_ok");
  std::ofstream(dir / "c.json") << ToyJson(dir).dump();
  EXPECT_EQ(RunCli("stats --config " + (dir / "c.json").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "stats.json"));
}

TEST(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(RunCli("stats"), 1);
  EXPECT_EQ(RunCli("frobnicate --config x"), 1);
  const fs::path dir = Scratch("cli_usage");
  std::ofstream(dir / "c.json") << ToyJson(dir).dump();
  EXPECT_EQ(RunCli("augment --method eda --config " + (dir / "c.json").string()), 1);
}

TEST(CliTest, EmptyDatasetExitsOne) {
  const fs::path dir = Scratch("cli_empty");
  std::ofstream(dir / "empty.csv") << "sentence,label\n";
  nlohmann::json j = ToyJson(dir);
  j["dataset"]["path"] = (dir / "empty.csv").string();
  std::ofstream(dir / "c.json") << j.dump();
  EXPECT_EQ(RunCli("augment --config " + (dir / "c.json").string()), 1);
}

TEST(CliTest, UnreachableGeneratorExitsTwo) {
  const fs::path dir = Scratch("cli_down");
  nlohmann::json j = ToyJson(dir);
  j["generation"] = {{"use_mock", false},
                     {"base_url", "http://127.0.0.1:1"},
                     {"max_retries", 0},
                     {"http_attempts", 1},
                     {"initial_backoff_ms", 1},
                     {"timeout_seconds", 1}};
  std::ofstream(dir / "c.json") << j.dump();
  EXPECT_EQ(RunCli("augment --config " + (dir / "c.json").string()), 2);
  const auto report = nlohmann::json::parse(Slurp(dir / "run_report.json"));
  EXPECT_FALSE(report["complete"].get<bool>());
}

}  // namespace
}  // namespace ctiaug
