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

#include "ctiaug/text_generator.h"

#include <atomic>

#include "ctiaug/generate.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "stub_server.h"

namespace ctiaug {
namespace {

using ::testing::HasSubstr;
using testing::StubServer;

GenerationConfig FastConfig(const std::string& url) {
  GenerationConfig c;
  c.base_url = url;
  c.initial_backoff_ms = 1;
  c.timeout_seconds = 5;
  return c;
}

ClusterFeatureBundle SmallBundle() {
  ClusterFeatureBundle b;
  b.technique_id = "T1003";
  b.few_shots = {"The adversary dumped LSASS memory.",
                 "Mimikatz was used to read credentials."};
  b.synonyms = {"extract", "harvest"};
  b.tones = {Tone::kNeutral};
  return b;
}

TEST(ConfigTest, Validation) {
  GenerationConfig c;
  EXPECT_TRUE(ValidateGenerationConfig(c).ok());
  c.api_style = "grpc";
  EXPECT_FALSE(ValidateGenerationConfig(c).ok());
  c = GenerationConfig();
  c.max_items_per_request = 0;
  EXPECT_FALSE(ValidateGenerationConfig(c).ok());
  c = GenerationConfig();
  c.max_retries = -1;
  EXPECT_FALSE(ValidateGenerationConfig(c).ok());
}

TEST(MockGeneratorTest, DeterministicParseableAndSized) {
  const ClusterFeatureBundle b = SmallBundle();
  MockTextGenerator a(7);
  MockTextGenerator again(7);
  GenerationRequest req{"prompt text", 5, 0, &b};
  auto first = a.Generate(req);
  auto second = again.Generate(req);
  ASSERT_TRUE(first.ok());
  EXPECT_EQ(*first, *second);
  auto items = ParseGeneration(*first);
  ASSERT_TRUE(items.ok());
  EXPECT_EQ(items->size(), 5u);
  req.attempt = 1;
  EXPECT_NE(*a.Generate(req), *first);
}

TEST(MockGeneratorTest, FactoryHonoursUseMock) {
  GenerationConfig c;
  c.use_mock = true;
  EXPECT_EQ(MakeTextGenerator(c, 1)->name(), "mock");
  c.use_mock = false;
  EXPECT_EQ(MakeTextGenerator(c, 1)->name(), c.model_id);
}

TEST(HttpGeneratorTest, CompletionStyle) {
  nlohmann::json seen;
  StubServer stub([&](httplib::Server& s) {
    s.Post("/generate", [&](const httplib::Request& req, httplib::Response& res) {
      seen = nlohmann::json::parse(req.body);
      res.set_content(R"({"text":"1. one\n2. two"})", "application/json");
    });
  });
  HttpTextGenerator gen(FastConfig(stub.url()));
  auto out = gen.Generate({"hello", 2, 0, nullptr});
  ASSERT_TRUE(out.ok()) << out.status();
  EXPECT_EQ(*out, "1. one\n2. two");
  EXPECT_EQ(seen["prompt"], "hello");
  EXPECT_EQ(seen["model"], "gemma-3-4b");
  EXPECT_TRUE(seen.contains("temperature"));
  EXPECT_TRUE(seen.contains("max_tokens"));
}

TEST(HttpGeneratorTest, ChatStyle) {
  nlohmann::json seen;
  StubServer stub([&](httplib::Server& s) {
    s.Post("/v1/chat/completions",
           [&](const httplib::Request& req, httplib::Response& res) {
             seen = nlohmann::json::parse(req.body);
             res.set_content(
                 R"({"choices":[{"message":{"role":"assistant","content":"- a"}}]})",
                 "application/json");
           });
  });
  GenerationConfig c = FastConfig(stub.url());
  c.api_style = "chat";
  HttpTextGenerator gen(c);
  auto out = gen.Generate({"hello", 1, 0, nullptr});
  ASSERT_TRUE(out.ok()) << out.status();
  EXPECT_EQ(*out, "- a");
  EXPECT_EQ(seen["messages"][0]["role"], "user");
  EXPECT_EQ(seen["messages"][0]["content"], "hello");
}

TEST(HttpGeneratorTest, RetriesTransientStatus) {
  std::atomic<int> calls{0};
  StubServer stub([&](httplib::Server& s) {
    s.Post("/generate", [&](const httplib::Request&, httplib::Response& res) {
      if (calls++ < 2) {
        res.status = 429;
        return;
      }
      res.set_content(R"({"text":"1. ok"})", "application/json");
    });
  });
  HttpTextGenerator gen(FastConfig(stub.url()));
  auto out = gen.Generate({"p", 1, 0, nullptr});
  ASSERT_TRUE(out.ok()) << out.status();
  EXPECT_EQ(calls.load(), 3);
}

TEST(HttpGeneratorTest, BadReplies) {
  StubServer stub([](httplib::Server& s) {
    s.Post("/generate", [](const httplib::Request& req, httplib::Response& res) {
      if (req.body.find("notjson") != std::string::npos) {
        res.set_content("<html>", "text/html");
      } else if (req.body.find("nofield") != std::string::npos) {
        res.set_content(R"({"output":"x"})", "application/json");
      } else {
        res.status = 404;
      }
    });
  });
  HttpTextGenerator gen(FastConfig(stub.url()));
  EXPECT_EQ(gen.Generate({"notjson", 1, 0, nullptr}).status().code(),
            absl::StatusCode::kDataLoss);
  EXPECT_EQ(gen.Generate({"nofield", 1, 0, nullptr}).status().code(),
            absl::StatusCode::kDataLoss);
  auto missing = gen.Generate({"other", 1, 0, nullptr});
  ASSERT_FALSE(missing.ok());
  EXPECT_THAT(std::string(missing.status().message()), HasSubstr("404"));
}

TEST(HttpGeneratorTest, UnreachableEndpoint) {
  GenerationConfig c = FastConfig("http://127.0.0.1:1");
  c.http_attempts = 2;
  HttpTextGenerator gen(c);
  EXPECT_EQ(gen.Generate({"p", 1, 0, nullptr}).status().code(),
            absl::StatusCode::kUnavailable);
}

}  // namespace
}  // namespace ctiaug
