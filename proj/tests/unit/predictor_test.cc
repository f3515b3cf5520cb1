// Copyright 2026 The MutaLM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "mutalm/errors.h"
#include "mutalm/predictor.h"
#include "mutalm/targets.h"
#include "mutalm/util.h"
#include "test_support.h"

namespace mutalm::predictor {
namespace {

using nlohmann::json;
using targets::NodeKind;

std::vector<std::string> Words(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& t : lang::Tokenize(text)) out.push_back(t.lexeme);
  return out;
}

std::size_t MaskAt(const std::vector<std::string>& tokens) {
  return static_cast<std::size_t>(
      std::find(tokens.begin(), tokens.end(), std::string(lang::kMaskToken)) - tokens.begin());
}

std::vector<std::string> Texts(const std::vector<Prediction>& preds) {
  std::vector<std::string> out;
  for (const auto& p : preds) out.push_back(p.token_text);
  return out;
}

// The literal target of "int a = 1;".
targets::MaskedSequence LiteralSequence() {
  static const lang::SourceUnit unit =
      testing::Canon("class A { int f(int b) { int a = 1; return a + b; } }");
  for (const auto& t : targets::CollectTargets(unit)) {
    if (t.kind == NodeKind::kLiteral) return targets::MaskTarget(unit, t);
  }
  throw Error("no literal");
}

TEST(Stub, LiteralSlotPoolAndScores) {
  const auto tokens = Words("int a = <mask> ;");
  const auto preds = StubPredict(tokens, MaskAt(tokens), 5, Slot::kLiteral);
  ASSERT_EQ(preds.size(), 5u);
  auto texts = Texts(preds);
  std::sort(texts.begin(), texts.end());
  EXPECT_EQ(texts, (std::vector<std::string>{"-1", "0", "1", "10", "2"}));
  const double scores[] = {0.5, 0.25, 0.125, 0.0625, 0.03125};
  for (std::size_t i = 0; i < preds.size(); ++i) {
    EXPECT_DOUBLE_EQ(preds[i].score, scores[i]);
    EXPECT_EQ(preds[i].rank, static_cast<int>(i + 1));
  }
}

TEST(Stub, IdentifierPoolCoversContext) {
  const auto tokens = Words("res = <mask> + b ;");
  const auto preds = StubPredict(tokens, MaskAt(tokens), 100, Slot::kIdentifier);
  const auto texts = Texts(preds);
  const std::set<std::string> got(texts.begin(), texts.end());
  for (const char* want : {"res", "b", "0", "1", "2", "10", "-1"}) {
    EXPECT_TRUE(got.count(want)) << want;
  }
}

TEST(Stub, BinaryOperatorPool) {
  const auto tokens = Words("res = a <mask> b ;");
  const auto preds = StubPredict(tokens, MaskAt(tokens), 5, Slot::kBinaryOperator);
  ASSERT_EQ(preds.size(), 5u);
  const std::set<std::string> ops = {"+", "-", "*", "/", "%", "<", "<=",
                                     ">", ">=", "==", "!=", "&&", "||"};
  for (const auto& p : preds) EXPECT_TRUE(ops.count(p.token_text)) << p.token_text;
}

TEST(Stub, Deterministic) {
  const auto tokens = Words("res = a <mask> b ;");
  EXPECT_EQ(ResponseToJson(StubPredict(tokens, 3, 5, Slot::kBinaryOperator)).dump(),
            ResponseToJson(StubPredict(tokens, 3, 5, Slot::kBinaryOperator)).dump());
}

TEST(Stub, PrefixStable) {
  const auto unit = testing::LoadDemo("fraction.mj");
  for (const auto& t : targets::CollectTargets(unit)) {
    const auto seq = targets::MaskTarget(unit, t);
    const auto three = StubPredict(seq, 3);
    const auto five = StubPredict(seq, 5);
    ASSERT_LE(three.size(), five.size());
    for (std::size_t i = 0; i < three.size(); ++i) EXPECT_EQ(three[i], five[i]);
  }
}

TEST(Stub, NeverReturnsPlaceholder) {
  const auto tokens = Words("x = <mask> . f ( <mask> ) ;");
  for (Slot slot : {Slot::kIdentifier, Slot::kObjectField, Slot::kMethodName}) {
    for (const auto& p : StubPredict(tokens, 2, 50, slot)) {
      EXPECT_NE(p.token_text, lang::kMaskToken);
    }
  }
}

TEST(Stub, WireAndInProcessAgreeOutsideLiterals) {
  const auto unit = testing::LoadDemo("fraction.mj");
  for (const auto& t : targets::CollectTargets(unit)) {
    if (t.kind == NodeKind::kLiteral || t.kind == NodeKind::kStaticTypeRef ||
        t.kind == NodeKind::kArrayIndex || t.kind == NodeKind::kUnaryOperator) {
      continue;
    }
    const auto seq = targets::MaskTarget(unit, t);
    EXPECT_EQ(StubPredict(MakeRequest(seq, 5)), StubPredict(seq, 5)) << t.lexeme;
  }
}

TEST(Slots, Inference) {
  auto infer = [](const std::string& text) {
    const auto tokens = Words(text);
    return InferSlot(tokens, MaskAt(tokens));
  };
  EXPECT_EQ(infer("res = a <mask> b ;"), Slot::kBinaryOperator);
  EXPECT_EQ(infer("sum <mask> = current ;"), Slot::kAssignmentPrefix);
  EXPECT_EQ(infer("x = node . <mask> ;"), Slot::kObjectField);
  EXPECT_EQ(infer("list . <mask> ( node ) ;"), Slot::kMethodName);
  EXPECT_EQ(infer("x = <mask> a ;"), Slot::kUnaryOperator);
  EXPECT_EQ(infer("res = <mask> + 10 ;"), Slot::kIdentifier);
}

TEST(Config, Resolve) {
  ::unsetenv(kEndpointEnv);
  PredictorConfig cfg;
  cfg.k = 0;
  EXPECT_THROW(Resolve(cfg), Error);
  cfg.k = 5;
  cfg.mode = Mode::kRemote;
  EXPECT_THROW(Resolve(cfg), Error);
  ::setenv(kEndpointEnv, "http://example.invalid:1", 1);
  EXPECT_EQ(Resolve(cfg).endpoint.value(), "http://example.invalid:1");
  cfg.endpoint = "http://flag.invalid:2";
  EXPECT_EQ(Resolve(cfg).endpoint.value(), "http://example.invalid:1");
  ::unsetenv(kEndpointEnv);
  EXPECT_EQ(Resolve(cfg).endpoint.value(), "http://flag.invalid:2");
}

TEST(Wire, RequestRoundTrip) {
  const auto req = MakeRequest(LiteralSequence(), 5);
  const json body = ToJson(req);
  EXPECT_EQ(body["tokens"][body["mask_index"].get<std::size_t>()], "<mask>");
  const auto back = RequestFromJson(body);
  EXPECT_EQ(back.tokens, req.tokens);
  EXPECT_EQ(back.mask_index, req.mask_index);
  EXPECT_EQ(back.k, 5);
}

TEST(Wire, RequestSchemaViolations) {
  const json good = {{"tokens", {"a", "<mask>"}}, {"mask_index", 1}, {"k", 5}};
  EXPECT_NO_THROW(RequestFromJson(good));
  for (const char* key : {"tokens", "mask_index", "k"}) {
    json bad = good;
    bad.erase(key);
    EXPECT_THROW(RequestFromJson(bad), ProtocolError) << key;
  }
  json bad = good;
  bad["mask_index"] = 2;
  EXPECT_THROW(RequestFromJson(bad), ProtocolError);
  bad["mask_index"] = 0;
  EXPECT_THROW(RequestFromJson(bad), ProtocolError);
  bad = good;
  bad["k"] = 0;
  EXPECT_THROW(RequestFromJson(bad), ProtocolError);
  EXPECT_THROW(RequestFromJson(json::array()), ProtocolError);
}

TEST(Wire, ParseResponseNormalizes) {
  const std::string body = R"({"predictions": [
      {"token": "b", "score": 0.2}, {"token": "<mask>", "score": 0.9},
      {"token": "a", "score": 0.2}, {"token": "", "score": 0.8},
      {"token": "x\ny", "score": 0.7}, {"token": "c", "score": 0.5},
      {"token": "d", "score": 0.1}]})";
  const auto preds = ParseResponse(body, 3);
  EXPECT_EQ(Texts(preds), (std::vector<std::string>{"c", "a", "b"}));
  EXPECT_EQ(preds[2].rank, 3);
}

TEST(Wire, ParseResponseRejectsMalformed) {
  EXPECT_THROW(ParseResponse("not json", 5), ProtocolError);
  EXPECT_THROW(ParseResponse(R"({"nope": []})", 5), ProtocolError);
  EXPECT_THROW(ParseResponse(R"({"predictions": [{"token": 1, "score": 0.5}]})", 5),
               ProtocolError);
  EXPECT_THROW(ParseResponse(R"({"predictions": [{"token": "a"}]})", 5), ProtocolError);
}

TEST(Wire, GeneratedRequestsYieldConformingResponses) {
  Rng rng(5);
  const std::vector<std::string> vocab = {"a", "b", "res", "=", "+", "(", ")", ".",
                                          "0", "1", ";", "if", "==", "node", "next"};
  for (int i = 0; i < 1000; ++i) {
    FillMaskRequest req;
    const std::size_t n = 1 + rng.Below(20);
    for (std::size_t j = 0; j < n; ++j) req.tokens.push_back(vocab[rng.Below(vocab.size())]);
    req.mask_index = rng.Below(n);
    req.tokens[req.mask_index] = std::string(lang::kMaskToken);
    req.k = static_cast<int>(1 + rng.Below(8));
    const auto parsed = RequestFromJson(json::parse(ToJson(req).dump()));
    const auto preds = StubPredict(parsed);
    const auto back = ParseResponse(ResponseToJson(preds).dump(), req.k);
    ASSERT_EQ(back, preds);
    ASSERT_LE(preds.size(), static_cast<std::size_t>(req.k));
    for (std::size_t j = 1; j < preds.size(); ++j) ASSERT_GT(preds[j - 1].score, preds[j].score);
  }
}

// In-test fill-mask service.
class FakeServer {
 public:
  using Handler = std::function<void(const json&, httplib::Response&)>;

  explicit FakeServer(Handler handler) : handler_(std::move(handler)) {
    server_.Post("/v1/predict", [this](const httplib::Request& req, httplib::Response& res) {
      const int now = ++in_flight_;
      int seen = max_in_flight_.load();
      while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
      }
      ++requests_;
      handler_(json::parse(req.body), res);
      --in_flight_;
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FakeServer() {
    server_.stop();
    thread_.join();
  }

  std::string Url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
  int requests() const { return requests_; }
  int max_in_flight() const { return max_in_flight_; }

 private:
  Handler handler_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
};

PredictorConfig RemoteConfig(const std::string& url) {
  PredictorConfig cfg;
  cfg.mode = Mode::kRemote;
  cfg.endpoint = url;
  cfg.timeout = std::chrono::milliseconds(5000);
  return cfg;
}

void Reply(httplib::Response& res, const json& predictions) {
  res.set_content(json{{"predictions", predictions}}.dump(), "application/json");
}

TEST(Remote, OrderedPredictions) {
  ::unsetenv(kEndpointEnv);
  FakeServer server([](const json& body, httplib::Response& res) {
    const auto req = RequestFromJson(body);
    EXPECT_EQ(req.k, 5);
    Reply(res, {{{"token", "0"}, {"score", 0.4}},
                {{"token", "1"}, {"score", 0.3}},
                {{"token", "b"}, {"score", 0.1}},
                {{"token", "2"}, {"score", 0.08}},
                {{"token", "10"}, {"score", 0.05}}});
  });
  RemotePredictor client(RemoteConfig(server.Url()));
  EXPECT_EQ(Texts(client.Predict(LiteralSequence())),
            (std::vector<std::string>{"0", "1", "b", "2", "10"}));
}

TEST(Remote, RetriesOnceAfterUnavailable) {
  ::unsetenv(kEndpointEnv);
  std::atomic<int> calls{0};
  FakeServer server([&](const json&, httplib::Response& res) {
    if (calls++ == 0) {
      res.status = 503;
      return;
    }
    Reply(res, {{{"token", "7"}, {"score", 1.0}}});
  });
  const auto cfg = RemoteConfig(server.Url());
  RemotePredictor client(cfg);
  const auto preds = PredictWithRetry(client, LiteralSequence(), cfg);
  ASSERT_TRUE(preds.has_value());
  EXPECT_EQ(Texts(*preds), (std::vector<std::string>{"7"}));
  EXPECT_EQ(server.requests(), 2);
}

TEST(Remote, GivesUpAfterTwoFailures) {
  ::unsetenv(kEndpointEnv);
  FakeServer server([](const json&, httplib::Response& res) { res.status = 503; });
  const auto cfg = RemoteConfig(server.Url());
  RemotePredictor client(cfg);
  EXPECT_THROW(client.Predict(LiteralSequence()), RemoteUnavailable);
  EXPECT_FALSE(PredictWithRetry(client, LiteralSequence(), cfg).has_value());
  EXPECT_EQ(server.requests(), 3);
}

TEST(Remote, MalformedBodyIsProtocolError) {
  ::unsetenv(kEndpointEnv);
  FakeServer server([](const json&, httplib::Response& res) {
    res.set_content("{\"predictions\": 3}", "application/json");
  });
  const auto cfg = RemoteConfig(server.Url());
  RemotePredictor client(cfg);
  EXPECT_THROW(PredictWithRetry(client, LiteralSequence(), cfg), ProtocolError);
}

TEST(Remote, BadRequestIsProtocolError) {
  ::unsetenv(kEndpointEnv);
  FakeServer server([](const json&, httplib::Response& res) { res.status = 400; });
  RemotePredictor client(RemoteConfig(server.Url()));
  EXPECT_THROW(client.Predict(LiteralSequence()), ProtocolError);
}

TEST(Remote, ConnectionRefusedIsUnavailable) {
  ::unsetenv(kEndpointEnv);
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  auto cfg = RemoteConfig("http://127.0.0.1:" + std::to_string(port));
  cfg.timeout = std::chrono::milliseconds(300);
  RemotePredictor client(cfg);
  EXPECT_THROW(client.Predict(LiteralSequence()), RemoteUnavailable);
}

TEST(Remote, EnvironmentOverridesFlag) {
  FakeServer server([](const json&, httplib::Response& res) {
    Reply(res, {{{"token", "42"}, {"score", 1.0}}});
  });
  ::setenv(kEndpointEnv, server.Url().c_str(), 1);
  auto predictor = MakePredictor(RemoteConfig("http://127.0.0.1:1"));
  ::unsetenv(kEndpointEnv);
  EXPECT_EQ(Texts(predictor->Predict(LiteralSequence())), (std::vector<std::string>{"42"}));
}

TEST(Remote, BoundsRequestsInFlight) {
  ::unsetenv(kEndpointEnv);
  FakeServer server([](const json&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(30));
    Reply(res, {{{"token", "3"}, {"score", 1.0}}});
  });
  auto cfg = RemoteConfig(server.Url());
  cfg.max_in_flight = 2;
  RemotePredictor client(cfg);
  const auto seq = LiteralSequence();
  ParallelFor(12, 8, [&](std::size_t) { client.Predict(seq); });
  EXPECT_EQ(server.requests(), 12);
  EXPECT_LE(server.max_in_flight(), 2);
  EXPECT_GE(server.max_in_flight(), 1);
}

TEST(Remote, CropsToWindow) {
  ::unsetenv(kEndpointEnv);
  std::atomic<std::size_t> longest{0};
  FakeServer server([&](const json& body, httplib::Response& res) {
    longest = std::max<std::size_t>(longest, body["tokens"].size());
    Reply(res, {{{"token", "3"}, {"score", 1.0}}});
  });
  auto cfg = RemoteConfig(server.Url());
  cfg.window = 4;
  RemotePredictor client(cfg);
  Predict(client, LiteralSequence(), cfg);
  EXPECT_EQ(longest.load(), 4u);
}

}  // namespace
}  // namespace mutalm::predictor
