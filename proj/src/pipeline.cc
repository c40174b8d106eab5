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

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <set>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "ctiaug/generate.h"
#include "ctiaug/lexicon.h"
#include "ctiaug/rng.h"
#include "ctiaug/status_macros.h"
#include "ctiaug/text_util.h"

namespace ctiaug {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Reads a JSON object section, rejecting keys outside `allowed`.
class Section {
 public:
  Section(const Json& j, std::string name, std::set<std::string> allowed)
      : j_(j), name_(std::move(name)), allowed_(std::move(allowed)) {}

  absl::Status Check() const {
    if (!j_.is_object()) {
      return absl::InvalidArgumentError(
          absl::StrCat("config section '", name_, "' must be an object"));
    }
    for (const auto& [key, value] : j_.items()) {
      if (!allowed_.contains(key)) {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown config key '", name_, ".", key, "'"));
      }
    }
    return absl::OkStatus();
  }

  template <typename T>
  absl::Status Get(const std::string& key, T& out) const {
    if (!j_.contains(key)) return absl::OkStatus();
    try {
      out = j_.at(key).get<T>();
    } catch (const Json::exception& e) {
      return absl::InvalidArgumentError(
          absl::StrCat("config key '", name_, ".", key, "': ", e.what()));
    }
    return absl::OkStatus();
  }

  bool Has(const std::string& key) const { return j_.contains(key); }
  const Json& at(const std::string& key) const { return j_.at(key); }

 private:
  const Json& j_;
  std::string name_;
  std::set<std::string> allowed_;
};

std::string_view GroupingName(QualityGrouping g) {
  return g == QualityGrouping::kJoint ? "joint" : "synthetic_only";
}

std::string_view CosineModeName(CosineMode m) {
  return m == CosineMode::kCentroid ? "centroid" : "pairwise";
}

std::string ClusterTag(int cluster_id) {
  return cluster_id < 0 ? "noise" : absl::StrCat("cluster_", cluster_id);
}

absl::Status WriteUnder(const std::string& dir, const std::string& name,
                        std::string_view content) {
  return WriteFile((std::filesystem::path(dir) / name).string(), content);
}

// Runs fn(i) for i in [0, n) on up to `parallelism` threads.
void ParallelFor(int n, int parallelism, const std::function<void(int)>& fn) {
  const int workers = std::clamp(parallelism, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

struct Resources {
  std::unique_ptr<EmbeddingProvider> provider;
  SynonymDatabase lexdb;
  FrequencyTable freq;
  PromptTemplate tmpl;
};

absl::StatusOr<Resources> LoadResources(const RunConfig& config,
                                        bool need_provider) {
  Resources r;
  if (need_provider) {
    ASSIGN_OR_RETURN(r.provider, MakeEmbeddingProvider(config.embedding));
  }
  if (!config.synonyms_path.empty()) {
    ASSIGN_OR_RETURN(r.lexdb, SynonymDatabase::Load(config.synonyms_path));
  }
  if (!config.frequencies_path.empty()) {
    ASSIGN_OR_RETURN(r.freq, FrequencyTable::Load(config.frequencies_path));
  }
  r.tmpl = config.prompt;
  if (!config.prompt_template_path.empty()) {
    ASSIGN_OR_RETURN(PromptTemplate loaded,
                     LoadPromptTemplate(config.prompt_template_path));
    r.tmpl.body = loaded.body;
  }
  return r;
}

// Per-class outputs of the main method, kept in memory until every class is
// done so files and manifests are written in a fixed order.
struct ClassOutput {
  ClassRunReport report;
  std::vector<SyntheticRecord> records;
  std::vector<std::pair<std::string, std::string>> files;  // path, content
  absl::Status status;
};

ClassOutput AugmentClass(const RunConfig& config, const std::string& label,
                         const std::vector<std::string>& train_texts,
                         const std::vector<std::string>& all_originals,
                         int budget, Resources& res, TextGenerator& generator) {
  ClassOutput out;
  out.report.technique_id = label;
  out.report.n_train = static_cast<int>(train_texts.size());
  out.report.requested = budget;

  auto fail = [&](const absl::Status& s) {
    out.status = s;
    out.report.errors.push_back(std::string(s.message()));
    return out;
  };

  auto embedded = res.provider->Embed(train_texts);
  if (!embedded.ok()) return fail(embedded.status());
  std::vector<EmbeddingVector> points;
  points.reserve(train_texts.size());
  for (const auto& t : train_texts) points.push_back(*embedded->Find(t));

  const Clustering clustering = HdbscanCluster(points, config.cluster);
  out.report.clusters = clustering.n_clusters;
  out.report.fallback = clustering.fallback;
  out.files.emplace_back(absl::StrCat("clusters/", label, ".jsonl"),
                         ClusteringDebugJsonl(clustering));

  DedupeIndex index(all_originals);
  std::vector<EmbeddingVector> kept_vectors;
  if (config.generation.near_duplicate_filter) {
    kept_vectors = points;
    const double limit = config.generation.near_duplicate_cosine;
    index.set_extra_filter([&res, &kept_vectors, limit](const std::string& t) {
      auto e = res.provider->Embed({t});
      if (!e.ok()) return false;
      const EmbeddingVector& v = *e->Find(t);
      for (const auto& k : kept_vectors) {
        if (Dot(v, k) >= limit) return true;
      }
      kept_vectors.push_back(v);
      return false;
    });
  }

  FeatureResources fres{res.provider.get(), &res.lexdb, &res.freq, nullptr};
  for (const auto& [cluster_id, quota] : PlanQuotas(budget, clustering)) {
    if (quota <= 0) continue;
    auto ranked_ids = RankByMembership(clustering, cluster_id);
    if (!ranked_ids.ok()) return fail(ranked_ids.status());
    std::vector<std::string> ranked;
    for (int id : *ranked_ids) ranked.push_back(train_texts[id]);

    FeatureOptions fopts = config.features;
    fopts.topics.seed =
        DeriveSeed(config.seed, absl::StrCat("topics:", label, ":", cluster_id));
    auto bundle = ExtractFeatures(label, cluster_id, ranked, fres, fopts);
    if (!bundle.ok()) return fail(bundle.status());
    const std::string stem = absl::StrCat(label, "/", ClusterTag(cluster_id));
    out.files.emplace_back(absl::StrCat("features/", stem, ".json"),
                           BundleToJson(*bundle).dump(2) + "\n");

    const std::vector<int> chunks =
        ChunkQuota(quota, config.generation.max_items_per_request);
    for (size_t k = 0; k < chunks.size(); ++k) {
      auto prompt = RenderPrompt(*bundle, chunks[k], res.tmpl);
      if (!prompt.ok()) return fail(prompt.status());
      out.files.emplace_back(
          absl::StrCat("prompts/", stem, "_request_", k, ".txt"),
          prompt->rendered);
      ClusterGenerationResult gen = GenerateForCluster(
          *prompt, res.tmpl, generator, index, config.generation);
      out.report.requests += gen.requests;
      out.report.retries += gen.retries;
      for (auto& e : gen.errors) {
        out.report.errors.push_back(
            absl::StrCat(ClusterTag(cluster_id), " request ", k, ": ", e));
      }
      for (auto& r : gen.records) out.records.push_back(std::move(r));
    }
  }
  out.report.obtained = static_cast<int>(out.records.size());
  return out;
}

OrderedJson ClassReportToJson(const ClassRunReport& r) {
  OrderedJson j;
  j["technique_id"] = r.technique_id;
  j["n_train"] = r.n_train;
  j["requested"] = r.requested;
  j["obtained"] = r.obtained;
  j["clusters"] = r.clusters;
  j["fallback"] = r.fallback;
  j["requests"] = r.requests;
  j["retries"] = r.retries;
  j["errors"] = r.errors;
  return j;
}

std::string RecordsJsonl(const std::vector<OrderedJson>& rows) {
  std::string out;
  for (const auto& r : rows) absl::StrAppend(&out, r.dump(), "\n");
  return out;
}

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kSynthCti:
      return "synthcti";
    case Method::kSynonymReplacement:
      return "synonym_replacement";
    case Method::kRandomSwap:
      return "random_swap";
    case Method::kCharNoise:
      return "char_noise";
  }
  return "synthcti";
}

absl::StatusOr<Method> ParseMethod(std::string_view name) {
  for (Method m : {Method::kSynthCti, Method::kSynonymReplacement,
                   Method::kRandomSwap, Method::kCharNoise}) {
    if (MethodName(m) == name) return m;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown method '", Sv(name), "'"));
}

absl::StatusOr<RunConfig> RunConfigFromJson(const Json& j) {
  RunConfig c;
  Section top(j, "config",
              {"dataset", "split", "seed", "embedding", "cluster", "features",
               "lexicon", "prompt", "generation", "baselines", "quality",
               "parallelism", "output_dir"});
  RETURN_IF_ERROR(top.Check());
  RETURN_IF_ERROR(top.Get("seed", c.seed));
  RETURN_IF_ERROR(top.Get("parallelism", c.parallelism));
  RETURN_IF_ERROR(top.Get("output_dir", c.output_dir));

  if (top.Has("dataset")) {
    Section s(top.at("dataset"), "dataset",
              {"path", "sentence_column", "label_column", "drop_duplicates"});
    RETURN_IF_ERROR(s.Check());
    RETURN_IF_ERROR(s.Get("path", c.dataset_path));
    RETURN_IF_ERROR(s.Get("sentence_column", c.load.columns.sentence));
    RETURN_IF_ERROR(s.Get("label_column", c.load.columns.label));
    RETURN_IF_ERROR(s.Get("drop_duplicates", c.load.drop_duplicates));
  }
  if (top.Has("split")) {
    Section s(top.at("split"), "split", {"test_fraction"});
    RETURN_IF_ERROR(s.Check());
    RETURN_IF_ERROR(s.Get("test_fraction", c.test_fraction));
  }
  if (top.Has("embedding")) {
    Section s(top.at("embedding"), "embedding",
              {"provider", "path", "hashing_dim", "base_url", "model_id",
               "batch_size", "max_attempts", "initial_backoff_ms",
               "backoff_multiplier", "timeout_seconds", "parallelism",
               "cache_dir"});
    RETURN_IF_ERROR(s.Check());
    EmbeddingConfig& e = c.embedding;
    RETURN_IF_ERROR(s.Get("provider", e.provider));
    RETURN_IF_ERROR(s.Get("path", e.path));
    RETURN_IF_ERROR(s.Get("hashing_dim", e.hashing_dim));
    RETURN_IF_ERROR(s.Get("base_url", e.service.base_url));
    RETURN_IF_ERROR(s.Get("model_id", e.service.model_id));
    RETURN_IF_ERROR(s.Get("batch_size", e.service.batch_size));
    RETURN_IF_ERROR(s.Get("max_attempts", e.service.max_attempts));
    RETURN_IF_ERROR(s.Get("initial_backoff_ms", e.service.initial_backoff_ms));
    RETURN_IF_ERROR(s.Get("backoff_multiplier", e.service.backoff_multiplier));
    RETURN_IF_ERROR(s.Get("timeout_seconds", e.service.timeout_seconds));
    RETURN_IF_ERROR(s.Get("parallelism", e.service.parallelism));
    RETURN_IF_ERROR(s.Get("cache_dir", e.cache_dir));
  }
  if (top.Has("cluster")) {
    Section s(top.at("cluster"), "cluster", {"min_cluster_size", "min_samples"});
    RETURN_IF_ERROR(s.Check());
    RETURN_IF_ERROR(s.Get("min_cluster_size", c.cluster.min_cluster_size));
    RETURN_IF_ERROR(s.Get("min_samples", c.cluster.min_samples));
  }
  if (top.Has("features")) {
    Section s(top.at("features"), "features",
              {"k_topics", "top_n", "lda_iterations", "lda_alpha", "lda_beta",
               "max_pseudo_count", "keyphrase_top_k", "synonym_alpha",
               "synonyms_per_keyword", "zipf_scale", "tone_margin",
               "few_shots"});
    RETURN_IF_ERROR(s.Check());
    FeatureOptions& f = c.features;
    RETURN_IF_ERROR(s.Get("k_topics", f.topics.k_topics));
    RETURN_IF_ERROR(s.Get("top_n", f.topics.top_n));
    RETURN_IF_ERROR(s.Get("lda_iterations", f.topics.iterations));
    RETURN_IF_ERROR(s.Get("lda_alpha", f.topics.alpha));
    RETURN_IF_ERROR(s.Get("lda_beta", f.topics.beta));
    RETURN_IF_ERROR(s.Get("max_pseudo_count", f.topics.max_pseudo_count));
    RETURN_IF_ERROR(s.Get("keyphrase_top_k", f.keyphrase_top_k));
    RETURN_IF_ERROR(s.Get("synonym_alpha", f.synonyms.alpha));
    RETURN_IF_ERROR(s.Get("synonyms_per_keyword", f.synonyms.per_keyword));
    RETURN_IF_ERROR(s.Get("zipf_scale", f.synonyms.zipf_scale));
    RETURN_IF_ERROR(s.Get("tone_margin", f.tone_margin));
    RETURN_IF_ERROR(s.Get("few_shots", f.few_shots));
  }
  if (top.Has("lexicon")) {
    Section s(top.at("lexicon"), "lexicon", {"synonyms", "frequencies"});
    RETURN_IF_ERROR(s.Check());
    RETURN_IF_ERROR(s.Get("synonyms", c.synonyms_path));
    RETURN_IF_ERROR(s.Get("frequencies", c.frequencies_path));
  }
  if (top.Has("prompt")) {
    Section s(top.at("prompt"), "prompt",
              {"template", "preamble", "include_preamble", "include_technique",
               "char_budget"});
    RETURN_IF_ERROR(s.Check());
    RETURN_IF_ERROR(s.Get("template", c.prompt_template_path));
    RETURN_IF_ERROR(s.Get("preamble", c.prompt.preamble));
    RETURN_IF_ERROR(s.Get("include_preamble", c.prompt.include_preamble));
    RETURN_IF_ERROR(s.Get("include_technique", c.prompt.include_technique));
    RETURN_IF_ERROR(s.Get("char_budget", c.prompt.char_budget));
  }
  if (top.Has("generation")) {
    Section s(top.at("generation"), "generation",
              {"base_url", "model_id", "api_style", "chat_path", "temperature",
               "max_tokens", "max_retries", "http_attempts",
               "initial_backoff_ms", "timeout_seconds", "parallelism",
               "max_items_per_request", "use_mock", "near_duplicate_filter",
               "near_duplicate_cosine"});
    RETURN_IF_ERROR(s.Check());
    GenerationConfig& g = c.generation;
    RETURN_IF_ERROR(s.Get("base_url", g.base_url));
    RETURN_IF_ERROR(s.Get("model_id", g.model_id));
    RETURN_IF_ERROR(s.Get("api_style", g.api_style));
    RETURN_IF_ERROR(s.Get("chat_path", g.chat_path));
    RETURN_IF_ERROR(s.Get("temperature", g.temperature));
    RETURN_IF_ERROR(s.Get("max_tokens", g.max_tokens));
    RETURN_IF_ERROR(s.Get("max_retries", g.max_retries));
    RETURN_IF_ERROR(s.Get("http_attempts", g.http_attempts));
    RETURN_IF_ERROR(s.Get("initial_backoff_ms", g.initial_backoff_ms));
    RETURN_IF_ERROR(s.Get("timeout_seconds", g.timeout_seconds));
    RETURN_IF_ERROR(s.Get("parallelism", g.parallelism));
    RETURN_IF_ERROR(s.Get("max_items_per_request", g.max_items_per_request));
    RETURN_IF_ERROR(s.Get("use_mock", g.use_mock));
    RETURN_IF_ERROR(s.Get("near_duplicate_filter", g.near_duplicate_filter));
    RETURN_IF_ERROR(s.Get("near_duplicate_cosine", g.near_duplicate_cosine));
  }
  if (top.Has("baselines")) {
    Section s(top.at("baselines"), "baselines", {"intensity"});
    RETURN_IF_ERROR(s.Check());
    RETURN_IF_ERROR(s.Get("intensity", c.baseline_intensity));
  }
  if (top.Has("quality")) {
    Section s(top.at("quality"), "quality",
              {"grouping", "cosine_mode", "self_bleu_max_n"});
    RETURN_IF_ERROR(s.Check());
    std::string grouping(GroupingName(c.quality.grouping));
    std::string mode(CosineModeName(c.quality.cosine_mode));
    RETURN_IF_ERROR(s.Get("grouping", grouping));
    RETURN_IF_ERROR(s.Get("cosine_mode", mode));
    RETURN_IF_ERROR(s.Get("self_bleu_max_n", c.quality.self_bleu_max_n));
    if (grouping == "joint") {
      c.quality.grouping = QualityGrouping::kJoint;
    } else if (grouping == "synthetic_only") {
      c.quality.grouping = QualityGrouping::kSyntheticOnly;
    } else {
      return absl::InvalidArgumentError("quality.grouping: joint|synthetic_only");
    }
    if (mode == "centroid") {
      c.quality.cosine_mode = CosineMode::kCentroid;
    } else if (mode == "pairwise") {
      c.quality.cosine_mode = CosineMode::kPairwise;
    } else {
      return absl::InvalidArgumentError("quality.cosine_mode: centroid|pairwise");
    }
  }

  if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0)) {
    return absl::InvalidArgumentError("split.test_fraction must lie in (0, 1)");
  }
  if (c.parallelism < 1) {
    return absl::InvalidArgumentError("parallelism must be at least 1");
  }
  if (!(c.baseline_intensity >= 0.0 && c.baseline_intensity <= 1.0)) {
    return absl::InvalidArgumentError("baselines.intensity must lie in [0, 1]");
  }
  RETURN_IF_ERROR(ValidateClusterParams(c.cluster));
  RETURN_IF_ERROR(ValidateGenerationConfig(c.generation));
  return c;
}

OrderedJson RunConfigToJson(const RunConfig& c) {
  OrderedJson j;
  j["seed"] = c.seed;
  j["parallelism"] = c.parallelism;
  j["output_dir"] = c.output_dir;
  j["dataset"] = {{"path", c.dataset_path},
                  {"sentence_column", c.load.columns.sentence},
                  {"label_column", c.load.columns.label},
                  {"drop_duplicates", c.load.drop_duplicates}};
  j["split"] = {{"test_fraction", c.test_fraction}};
  const EmbeddingConfig& e = c.embedding;
  j["embedding"] = {{"provider", e.provider},
                    {"path", e.path},
                    {"hashing_dim", e.hashing_dim},
                    {"base_url", e.service.base_url},
                    {"model_id", e.service.model_id},
                    {"batch_size", e.service.batch_size},
                    {"max_attempts", e.service.max_attempts},
                    {"initial_backoff_ms", e.service.initial_backoff_ms},
                    {"backoff_multiplier", e.service.backoff_multiplier},
                    {"timeout_seconds", e.service.timeout_seconds},
                    {"parallelism", e.service.parallelism},
                    {"cache_dir", e.cache_dir}};
  j["cluster"] = {{"min_cluster_size", c.cluster.min_cluster_size},
                  {"min_samples", c.cluster.min_samples}};
  const FeatureOptions& f = c.features;
  j["features"] = {{"k_topics", f.topics.k_topics},
                   {"top_n", f.topics.top_n},
                   {"lda_iterations", f.topics.iterations},
                   {"lda_alpha", f.topics.alpha},
                   {"lda_beta", f.topics.beta},
                   {"max_pseudo_count", f.topics.max_pseudo_count},
                   {"keyphrase_top_k", f.keyphrase_top_k},
                   {"synonym_alpha", f.synonyms.alpha},
                   {"synonyms_per_keyword", f.synonyms.per_keyword},
                   {"zipf_scale", f.synonyms.zipf_scale},
                   {"tone_margin", f.tone_margin},
                   {"few_shots", f.few_shots}};
  j["lexicon"] = {{"synonyms", c.synonyms_path},
                  {"frequencies", c.frequencies_path}};
  j["prompt"] = {{"template", c.prompt_template_path},
                 {"preamble", c.prompt.preamble},
                 {"include_preamble", c.prompt.include_preamble},
                 {"include_technique", c.prompt.include_technique},
                 {"char_budget", c.prompt.char_budget}};
  const GenerationConfig& g = c.generation;
  j["generation"] = {{"base_url", g.base_url},
                     {"model_id", g.model_id},
                     {"api_style", g.api_style},
                     {"chat_path", g.chat_path},
                     {"temperature", g.temperature},
                     {"max_tokens", g.max_tokens},
                     {"max_retries", g.max_retries},
                     {"http_attempts", g.http_attempts},
                     {"initial_backoff_ms", g.initial_backoff_ms},
                     {"timeout_seconds", g.timeout_seconds},
                     {"parallelism", g.parallelism},
                     {"max_items_per_request", g.max_items_per_request},
                     {"use_mock", g.use_mock},
                     {"near_duplicate_filter", g.near_duplicate_filter},
                     {"near_duplicate_cosine", g.near_duplicate_cosine}};
  j["baselines"] = {{"intensity", c.baseline_intensity}};
  j["quality"] = {{"grouping", GroupingName(c.quality.grouping)},
                  {"cosine_mode", CosineModeName(c.quality.cosine_mode)},
                  {"self_bleu_max_n", c.quality.self_bleu_max_n}};
  return j;
}

absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path) {
  ASSIGN_OR_RETURN(const std::string text, ReadFile(path));
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": ", e.what()));
  }
  return RunConfigFromJson(j);
}

absl::StatusOr<std::unique_ptr<EmbeddingProvider>> MakeEmbeddingProvider(
    const EmbeddingConfig& config) {
  if (config.provider == "hashing") {
    if (config.hashing_dim < 8) {
      return absl::InvalidArgumentError("embedding.hashing_dim must be >= 8");
    }
    return std::make_unique<HashingEmbeddingProvider>(config.hashing_dim);
  }
  if (config.provider == "file") {
    ASSIGN_OR_RETURN(EmbeddingSet set, LoadEmbeddings(config.path));
    return std::make_unique<StaticEmbeddingProvider>(std::move(set));
  }
  if (config.provider == "http") {
    std::unique_ptr<EmbeddingProvider> http =
        std::make_unique<HttpEmbeddingProvider>(config.service);
    if (config.cache_dir.empty()) return http;
    return std::make_unique<CachedEmbeddingProvider>(std::move(http),
                                                     config.cache_dir);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown embedding provider '", config.provider, "'"));
}

absl::StatusOr<StatsReport> RunStats(const RunConfig& config) {
  ASSIGN_OR_RETURN(LoadResult loaded,
                   LoadCorpus(config.dataset_path, config.load));
  if (loaded.sentences.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat(config.dataset_path, ": no usable rows"));
  }
  StatsReport report;
  report.rejects = std::move(loaded.rejects);
  ASSIGN_OR_RETURN(report.corpus, ComputeClassStats(loaded.sentences));
  ASSIGN_OR_RETURN(TrainTestSplit split,
                   StratifiedSplit(loaded.sentences, config.test_fraction,
                                   config.seed));
  ASSIGN_OR_RETURN(report.train, ComputeClassStats(split.train));
  report.budget = AugmentationBudget(report.train);
  return report;
}

std::string StatsTable(const StatsReport& report) {
  std::string out = absl::StrFormat("%-12s %8s %8s %8s\n", "technique",
                                    "N_corpus", "N_train", "G_train");
  for (const auto& [label, n] : report.corpus.counts) {
    const auto it = report.train.counts.find(label);
    const int n_train = it == report.train.counts.end() ? 0 : it->second;
    absl::StrAppend(&out, absl::StrFormat("%-12s %8d %8d %8d\n", label, n,
                                          n_train,
                                          report.budget.quotas.at(label)));
  }
  absl::StrAppend(&out,
                  absl::StrFormat("classes %d, mu_corpus %.4f, mu_train %.4f, "
                                  "rejects %d\n",
                                  report.corpus.m, report.corpus.mu,
                                  report.train.mu,
                                  static_cast<int>(report.rejects.size())));
  return out;
}

OrderedJson StatsToJson(const StatsReport& report) {
  auto block = [](const ClassStats& s) {
    OrderedJson b;
    b["m"] = s.m;
    b["mu"] = s.mu;
    b["counts"] = OrderedJson::object();
    for (const auto& [label, n] : s.counts) b["counts"][label] = n;
    return b;
  };
  OrderedJson j;
  j["corpus"] = block(report.corpus);
  j["train"] = block(report.train);
  OrderedJson corpus_budget = OrderedJson::object();
  for (const auto& [label, g] : AugmentationBudget(report.corpus).quotas) {
    corpus_budget[label] = g;
  }
  j["corpus"]["budget"] = corpus_budget;
  j["train"]["budget"] = OrderedJson::object();
  for (const auto& [label, g] : report.budget.quotas) {
    j["train"]["budget"][label] = g;
  }
  j["rejects"] = static_cast<int>(report.rejects.size());
  return j;
}

absl::StatusOr<TrainTestSplit> RunSplit(const RunConfig& config) {
  ASSIGN_OR_RETURN(LoadResult loaded,
                   LoadCorpus(config.dataset_path, config.load));
  if (loaded.sentences.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat(config.dataset_path, ": no usable rows"));
  }
  ASSIGN_OR_RETURN(TrainTestSplit split,
                   StratifiedSplit(loaded.sentences, config.test_fraction,
                                   config.seed));
  const std::string& dir = config.output_dir;
  RETURN_IF_ERROR(WriteUnder(dir, "train.jsonl", ManifestToJsonl(split.train)));
  RETURN_IF_ERROR(WriteUnder(dir, "test.jsonl", ManifestToJsonl(split.test)));
  RETURN_IF_ERROR(
      WriteUnder(dir, "rejects.jsonl", RejectsToJsonl(loaded.rejects)));
  return split;
}

absl::StatusOr<AugmentResult> RunAugment(const RunConfig& config,
                                         Method method) {
  ASSIGN_OR_RETURN(TrainTestSplit split, RunSplit(config));
  ASSIGN_OR_RETURN(const ClassStats stats, ComputeClassStats(split.train));
  const Budget budget = AugmentationBudget(stats);
  ASSIGN_OR_RETURN(Resources res,
                   LoadResources(config, method == Method::kSynthCti));
  const std::string& dir = config.output_dir;

  std::map<std::string, std::vector<std::string>> train_by_class;
  for (const auto& s : split.train) train_by_class[s.technique_id].push_back(s.text);

  AugmentResult result;
  std::vector<OrderedJson> manifest_rows;
  for (const auto& s : split.train) manifest_rows.push_back(SentenceToJson(s));
  std::vector<LabeledSentence> synthetic;

  if (method == Method::kSynthCti) {
    std::vector<std::string> originals;
    for (const auto& s : split.train) originals.push_back(s.text);
    for (const auto& s : split.test) originals.push_back(s.text);
    std::vector<std::string> labels;
    for (const auto& [label, g] : budget.quotas) {
      if (g > 0) labels.push_back(label);
    }
    std::unique_ptr<TextGenerator> generator =
        MakeTextGenerator(config.generation, config.seed);
    std::vector<ClassOutput> outputs(labels.size());
    ParallelFor(static_cast<int>(labels.size()), config.parallelism,
                [&](int i) {
                  const std::string& label = labels[i];
                  outputs[i] = AugmentClass(config, label,
                                            train_by_class.at(label), originals,
                                            budget.quotas.at(label), res,
                                            *generator);
                });
    for (const ClassOutput& out : outputs) {
      for (const auto& [path, content] : out.files) {
        RETURN_IF_ERROR(WriteUnder(dir, path, content));
      }
      for (const SyntheticRecord& r : out.records) {
        manifest_rows.push_back(SyntheticRecordToJson(r));
        synthetic.push_back({r.text, r.technique_id, Split::kSynthetic});
      }
      result.classes.push_back(out.report);
    }
  } else {
    ASSIGN_OR_RETURN(const BaselineMethod bm, ParseBaseline(MethodName(method)));
    for (const auto& [label, g] : budget.quotas) {
      if (g <= 0) continue;
      const std::vector<std::string>& texts = train_by_class.at(label);
      ClassRunReport report;
      report.technique_id = label;
      report.n_train = static_cast<int>(texts.size());
      report.requested = g;
      for (int k = 0; k < g; ++k) {
        const size_t source = static_cast<size_t>(k) % texts.size();
        BaselineConfig bc{bm, config.baseline_intensity, 0};
        std::string text;
        // A few reseeds so the output differs from its source when possible.
        for (int attempt = 0; attempt < 5; ++attempt) {
          bc.seed = DeriveSeed(config.seed,
                               absl::StrCat(Sv(MethodName(method)), ":", label, ":",
                                            k, ":", attempt));
          ASSIGN_OR_RETURN(text, ApplyBaseline(bc, texts[source], &res.lexdb));
          if (text != texts[source]) break;
        }
        OrderedJson row = SentenceToJson({text, label, Split::kSynthetic});
        row["method"] = MethodName(method);
        row["source_index"] = source;
        manifest_rows.push_back(std::move(row));
        synthetic.push_back({text, label, Split::kSynthetic});
        ++report.obtained;
      }
      result.classes.push_back(std::move(report));
    }
  }
  for (const auto& s : split.test) manifest_rows.push_back(SentenceToJson(s));

  result.manifest = split.train;
  result.manifest.insert(result.manifest.end(), synthetic.begin(),
                         synthetic.end());
  result.manifest.insert(result.manifest.end(), split.test.begin(),
                         split.test.end());
  for (const auto& c : result.classes) {
    if (c.obtained < c.requested) result.complete = false;
  }

  OrderedJson report;
  report["method"] = MethodName(method);
  report["seed"] = config.seed;
  report["classes_total"] = stats.m;
  report["mu_train"] = stats.mu;
  report["complete"] = result.complete;
  int requested = 0;
  int obtained = 0;
  OrderedJson classes = OrderedJson::array();
  for (const auto& c : result.classes) {
    requested += c.requested;
    obtained += c.obtained;
    classes.push_back(ClassReportToJson(c));
  }
  report["requested"] = requested;
  report["obtained"] = obtained;
  report["classes"] = std::move(classes);

  RETURN_IF_ERROR(WriteUnder(dir, "manifest.jsonl", RecordsJsonl(manifest_rows)));
  RETURN_IF_ERROR(WriteUnder(dir, "run_report.json", report.dump(2) + "\n"));
  RETURN_IF_ERROR(WriteUnder(dir, "resolved_config.json",
                             RunConfigToJson(config).dump(2) + "\n"));
  return result;
}

absl::StatusOr<std::vector<ClassQuality>> RunEvaluate(const RunConfig& config) {
  const std::string& dir = config.output_dir;
  ASSIGN_OR_RETURN(
      const std::vector<LabeledSentence> manifest,
      ReadManifest((std::filesystem::path(dir) / "manifest.jsonl").string()));
  std::vector<std::string> texts;
  for (const auto& row : manifest) {
    if (row.split != Split::kTest) texts.push_back(row.text);
  }
  ASSIGN_OR_RETURN(std::unique_ptr<EmbeddingProvider> provider,
                   MakeEmbeddingProvider(config.embedding));
  EmbeddingSet embeddings(provider->model_id());
  if (!texts.empty()) {
    ASSIGN_OR_RETURN(embeddings, provider->Embed(texts));
  }
  ASSIGN_OR_RETURN(std::vector<ClassQuality> rows,
                   EvaluateQuality(manifest, embeddings, config.quality));
  RETURN_IF_ERROR(WriteUnder(dir, "quality.jsonl", QualityJsonl(rows)));
  RETURN_IF_ERROR(WriteUnder(dir, "diversity.csv", DiversityCsv(rows)));
  std::string projection = "dim=0\n";
  if (!embeddings.empty()) {
    ASSIGN_OR_RETURN(projection, ProjectionFile(manifest, embeddings));
  }
  RETURN_IF_ERROR(WriteUnder(dir, "projection.tsv", projection));
  return rows;
}

}  // namespace ctiaug
