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

// ctiaug: stats | split | augment | evaluate.
// Exit codes: 0 success, 1 input error, 2 runtime failure.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "ctiaug/pipeline.h"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kRuntimeError = 2;

int ExitCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
      return kInputError;
    default:
      return kRuntimeError;
  }
}

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status << "\n";
  return ExitCode(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster-guided synthetic data augmentation for CTI sentences"};
  app.require_subcommand(1);

  std::string config_path;
  std::string method_name = "synthcti";
  std::string out_dir;
  long long seed = -1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON run configuration")
        ->required();
    cmd->add_option("--seed", seed, "Override the configured seed");
    cmd->add_option("--out", out_dir, "Override the output directory");
  };
  CLI::App* stats = app.add_subcommand("stats", "Class table, mean and budget");
  CLI::App* split = app.add_subcommand("split", "Stratified train/test split");
  CLI::App* augment = app.add_subcommand("augment", "Augment the training split");
  CLI::App* evaluate = app.add_subcommand("evaluate", "Quality report");
  for (CLI::App* cmd : {stats, split, augment, evaluate}) add_common(cmd);
  augment
      ->add_option("--method", method_name,
                   "synthcti, synonym_replacement, random_swap or char_noise")
      ->check(CLI::IsMember({"synthcti", "synonym_replacement", "random_swap",
                             "char_noise"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  auto config = ctiaug::LoadRunConfig(config_path);
  if (!config.ok()) return Fail(config.status());
  if (seed >= 0) config->seed = static_cast<uint64_t>(seed);
  if (!out_dir.empty()) config->output_dir = out_dir;

  if (stats->parsed()) {
    auto report = ctiaug::RunStats(*config);
    if (!report.ok()) return Fail(report.status());
    std::cout << ctiaug::StatsTable(*report);
    auto s = ctiaug::WriteFile(config->output_dir + "/stats.json",
                               ctiaug::StatsToJson(*report).dump(2) + "\n");
    if (!s.ok()) return Fail(s);
    return kOk;
  }
  if (split->parsed()) {
    auto result = ctiaug::RunSplit(*config);
    if (!result.ok()) return Fail(result.status());
    std::cout << "train " << result->train.size() << ", test "
              << result->test.size() << "\n";
    return kOk;
  }
  if (augment->parsed()) {
    auto method = ctiaug::ParseMethod(method_name);
    if (!method.ok()) return Fail(method.status());
    auto result = ctiaug::RunAugment(*config, *method);
    if (!result.ok()) return Fail(result.status());
    int requested = 0;
    int obtained = 0;
    for (const auto& c : result->classes) {
      requested += c.requested;
      obtained += c.obtained;
      for (const auto& e : c.errors) {
        std::cerr << c.technique_id << ": " << e << "\n";
      }
    }
    std::cout << "synthetic " << obtained << " of " << requested
              << " requested across " << result->classes.size()
              << " classes\n";
    if (!result->complete) {
      std::cerr << "error: augmentation incomplete, manifest is partial\n";
      return kRuntimeError;
    }
    return kOk;
  }
  auto rows = ctiaug::RunEvaluate(*config);
  if (!rows.ok()) return Fail(rows.status());
  for (const auto& r : *rows) {
    std::cout << r.technique_id << " " << ctiaug::StrengthName(r.strength)
              << "\n";
  }
  return kOk;
}
