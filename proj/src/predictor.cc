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

#include "mutalm/predictor.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <semaphore>
#include <set>
#include <tuple>

#include "httplib.h"
#include "mutalm/errors.h"
#include "mutalm/util.h"

namespace mutalm::predictor {

using targets::MaskedSequence;
using targets::NodeKind;

namespace {

constexpr std::size_t kContextRadius = 4;

const std::vector<std::string> kSmallLiterals = {"0", "1", "2", "10", "-1"};
const std::vector<std::string> kBinaryOps = {"+",  "-",  "*", "/",  "%",
                                             "<",  "<=", ">", ">=", "==",
                                             "!=", "&&", "||"};
const std::vector<std::string> kUnaryOps = {"!", "-", "++", "--"};
const std::vector<std::string> kAssignmentPrefixes = {"+", "-", "*", "/"};

bool IsIdentifierLexeme(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return !lang::IsKeyword(s) && s != "true" && s != "false" && s != "null";
}

bool IsLiteralLexeme(const std::string& s) {
  if (s.empty()) return false;
  return std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '"' ||
         s == "true" || s == "false" || s == "null";
}

bool EndsOperand(const std::string& s) {
  return IsIdentifierLexeme(s) || IsLiteralLexeme(s) || s == ")" || s == "]";
}

bool StartsOperand(const std::string& s) {
  return IsIdentifierLexeme(s) || IsLiteralLexeme(s) || s == "!" ||
         s == std::string(lang::kMaskToken);
}

void AddUnique(std::vector<std::string>& pool, std::set<std::string>& seen,
               const std::string& entry) {
  if (entry.empty() || entry == lang::kMaskToken) return;
  if (entry.find('\n') != std::string::npos) return;
  if (seen.insert(entry).second) pool.push_back(entry);
}

std::vector<std::string> BuildPool(const std::vector<std::string>& tokens,
                                   std::size_t mask_index, Slot slot) {
  std::vector<std::string> pool;
  std::set<std::string> seen;
  auto add_all = [&](const std::vector<std::string>& entries) {
    for (const auto& e : entries) AddUnique(pool, seen, e);
  };
  auto add_identifiers = [&](auto&& keep) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i != mask_index && IsIdentifierLexeme(tokens[i]) && keep(i)) {
        AddUnique(pool, seen, tokens[i]);
      }
    }
  };
  switch (slot) {
    case Slot::kLiteral:
      add_all(kSmallLiterals);
      break;
    case Slot::kIdentifier:
      add_identifiers([](std::size_t) { return true; });
      add_all(kSmallLiterals);
      break;
    case Slot::kObjectField:
      add_identifiers([](std::size_t) { return true; });
      break;
    case Slot::kMethodName:
      add_identifiers([&](std::size_t i) {
        return i + 1 < tokens.size() && tokens[i + 1] == "(";
      });
      break;
    case Slot::kStaticTypeRef:
      add_identifiers([&](std::size_t i) {
        return std::isupper(static_cast<unsigned char>(tokens[i][0])) != 0;
      });
      break;
    case Slot::kBinaryOperator:
      add_all(kBinaryOps);
      break;
    case Slot::kUnaryOperator:
      add_all(kUnaryOps);
      break;
    case Slot::kAssignmentPrefix:
      add_all(kAssignmentPrefixes);
      break;
  }
  return pool;
}

void Normalize(std::vector<Prediction>& preds, int k) {
  std::stable_sort(preds.begin(), preds.end(),
                   [](const Prediction& a, const Prediction& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.token_text < b.token_text;
                   });
  if (preds.size() > static_cast<std::size_t>(k)) preds.resize(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < preds.size(); ++i) preds[i].rank = static_cast<int>(i + 1);
}

std::vector<std::string> Lexemes(const MaskedSequence& seq) {
  std::vector<std::string> out;
  out.reserve(seq.tokens.size());
  for (const auto& t : seq.tokens) out.push_back(t.lexeme);
  return out;
}

}  // namespace

PredictorConfig Resolve(PredictorConfig cfg) {
  if (const char* env = std::getenv(kEndpointEnv); env != nullptr && *env != '\0') {
    cfg.endpoint = std::string(env);
  }
  if (cfg.k < 1) throw Error("k must be at least 1");
  if (cfg.window < 1) throw Error("window limit must be at least 1");
  if (cfg.max_in_flight < 1) cfg.max_in_flight = 1;
  if (cfg.mode == Mode::kRemote && (!cfg.endpoint || cfg.endpoint->empty())) {
    throw Error(std::string("remote predictor needs an endpoint (--predictor-url or ") +
                kEndpointEnv + ")");
  }
  return cfg;
}

const char* SlotName(Slot slot) {
  switch (slot) {
    case Slot::kLiteral: return "literal";
    case Slot::kIdentifier: return "identifier";
    case Slot::kBinaryOperator: return "binary-operator";
    case Slot::kUnaryOperator: return "unary-operator";
    case Slot::kAssignmentPrefix: return "assignment-prefix";
    case Slot::kObjectField: return "object-field";
    case Slot::kMethodName: return "method-name";
    case Slot::kStaticTypeRef: return "static-type-ref";
  }
  return "?";
}

Slot SlotForKind(NodeKind kind) {
  switch (kind) {
    case NodeKind::kLiteral: return Slot::kLiteral;
    case NodeKind::kIdentifier: return Slot::kIdentifier;
    case NodeKind::kBinaryOperator: return Slot::kBinaryOperator;
    case NodeKind::kUnaryOperator: return Slot::kUnaryOperator;
    case NodeKind::kAssignmentOperator: return Slot::kAssignmentPrefix;
    case NodeKind::kObjectField: return Slot::kObjectField;
    case NodeKind::kMethodName: return Slot::kMethodName;
    case NodeKind::kArrayIndex: return Slot::kIdentifier;
    case NodeKind::kStaticTypeRef: return Slot::kStaticTypeRef;
  }
  return Slot::kIdentifier;
}

Slot InferSlot(const std::vector<std::string>& tokens, std::size_t mask_index) {
  const std::string prev = mask_index > 0 ? tokens[mask_index - 1] : "";
  const std::string next = mask_index + 1 < tokens.size() ? tokens[mask_index + 1] : "";
  if (prev == ".") return next == "(" ? Slot::kMethodName : Slot::kObjectField;
  if (next == "(") return Slot::kMethodName;
  if (EndsOperand(prev)) {
    return next == "=" ? Slot::kAssignmentPrefix : Slot::kBinaryOperator;
  }
  if (StartsOperand(next)) return Slot::kUnaryOperator;
  return Slot::kIdentifier;
}

nlohmann::json ToJson(const FillMaskRequest& request) {
  return nlohmann::json{{"tokens", request.tokens},
                        {"mask_index", request.mask_index},
                        {"k", request.k}};
}

FillMaskRequest RequestFromJson(const nlohmann::json& body) {
  if (!body.is_object()) throw ProtocolError("request must be a JSON object");
  const auto tokens = body.find("tokens");
  const auto mask = body.find("mask_index");
  const auto k = body.find("k");
  if (tokens == body.end() || !tokens->is_array()) throw ProtocolError("missing tokens");
  if (mask == body.end() || !mask->is_number_integer()) throw ProtocolError("missing mask_index");
  if (k == body.end() || !k->is_number_integer()) throw ProtocolError("missing k");
  FillMaskRequest req;
  for (const auto& t : *tokens) {
    if (!t.is_string()) throw ProtocolError("tokens must be strings");
    req.tokens.push_back(t.get<std::string>());
  }
  const auto idx = mask->get<long long>();
  if (idx < 0 || static_cast<std::size_t>(idx) >= req.tokens.size()) {
    throw ProtocolError("mask_index out of range");
  }
  req.mask_index = static_cast<std::size_t>(idx);
  if (req.tokens[req.mask_index] != lang::kMaskToken) {
    throw ProtocolError("token at mask_index is not the mask placeholder");
  }
  req.k = k->get<int>();
  if (req.k < 1) throw ProtocolError("k must be positive");
  return req;
}

FillMaskRequest MakeRequest(const MaskedSequence& seq, int k) {
  return FillMaskRequest{Lexemes(seq), seq.mask_index, k};
}

nlohmann::json ResponseToJson(const std::vector<Prediction>& predictions) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& p : predictions) {
    list.push_back(nlohmann::json{{"token", p.token_text}, {"score", p.score}});
  }
  return nlohmann::json{{"predictions", list}};
}

std::vector<Prediction> ParseResponse(const std::string& body, int k) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("response is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("predictions") || !doc["predictions"].is_array()) {
    throw ProtocolError("response lacks a predictions array");
  }
  std::vector<Prediction> preds;
  for (const auto& item : doc["predictions"]) {
    if (!item.is_object() || !item.contains("token") || !item["token"].is_string() ||
        !item.contains("score") || !item["score"].is_number()) {
      throw ProtocolError("prediction entries need a string token and a numeric score");
    }
    Prediction p;
    p.token_text = item["token"].get<std::string>();
    p.score = item["score"].get<double>();
    if (!std::isfinite(p.score)) throw ProtocolError("non-finite score");
    if (p.token_text.empty() || p.token_text == lang::kMaskToken ||
        p.token_text.find('\n') != std::string::npos) {
      continue;
    }
    preds.push_back(std::move(p));
  }
  Normalize(preds, k);
  return preds;
}

std::vector<Prediction> StubPredict(const std::vector<std::string>& tokens,
                                    std::size_t mask_index, int k, Slot slot) {
  const std::vector<std::string> pool = BuildPool(tokens, mask_index, slot);
  const std::size_t lo = mask_index >= kContextRadius ? mask_index - kContextRadius : 0;
  const std::size_t hi = std::min(tokens.size(), mask_index + kContextRadius + 1);
  std::vector<std::pair<std::uint64_t, std::string>> keyed;
  keyed.reserve(pool.size());
  for (const auto& entry : pool) {
    Fnv1a h;
    h.Add(entry);
    for (std::size_t i = lo; i < hi; ++i) {
      if (i == mask_index) continue;
      h.Separator().Add(tokens[i]);
    }
    keyed.emplace_back(h.value(), entry);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Prediction> out;
  const std::size_t n = std::min(keyed.size(), static_cast<std::size_t>(std::max(k, 0)));
  for (std::size_t i = 0; i < n; ++i) {
    const int rank = static_cast<int>(i + 1);
    out.push_back(Prediction{keyed[i].second, std::ldexp(1.0, -rank), rank});
  }
  return out;
}

std::vector<Prediction> StubPredict(const FillMaskRequest& request) {
  return StubPredict(request.tokens, request.mask_index, request.k,
                     InferSlot(request.tokens, request.mask_index));
}

std::vector<Prediction> StubPredict(const MaskedSequence& seq, int k) {
  return StubPredict(Lexemes(seq), seq.mask_index, k, SlotForKind(seq.origin.kind));
}

std::vector<Prediction> StubPredictor::Predict(const MaskedSequence& seq) {
  return StubPredict(seq, k_);
}

struct RemotePredictor::Impl {
  std::string scheme_host_port;
  std::string path;
  PredictorConfig cfg;
  std::counting_semaphore<1024> slots{1};

  explicit Impl(const PredictorConfig& c)
      : cfg(c), slots(static_cast<std::ptrdiff_t>(std::min(c.max_in_flight, 1024u))) {
    const std::string& url = *c.endpoint;
    const auto scheme_end = url.find("://");
    const std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    const auto path_start = url.find('/', host_start);
    scheme_host_port = url.substr(0, path_start);
    if (scheme_end == std::string::npos) scheme_host_port = "http://" + scheme_host_port;
    path = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!path.empty() && path.back() == '/') path.pop_back();
    path += "/predict";
  }
};

RemotePredictor::RemotePredictor(const PredictorConfig& cfg)
    : impl_(std::make_unique<Impl>(Resolve(cfg))) {}

RemotePredictor::~RemotePredictor() = default;

std::vector<Prediction> RemotePredictor::Predict(const MaskedSequence& seq) {
  const std::string body = ToJson(MakeRequest(seq, impl_->cfg.k)).dump();
  impl_->slots.acquire();
  httplib::Result res;
  {
    httplib::Client client(impl_->scheme_host_port);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(impl_->cfg.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(
        impl_->cfg.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    res = client.Post(impl_->path, body, "application/json");
  }
  impl_->slots.release();
  if (!res) {
    throw RemoteUnavailable("predictor request failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 503 || res->status >= 500) {
    throw RemoteUnavailable("predictor returned status " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw ProtocolError("predictor rejected the request with status " +
                        std::to_string(res->status));
  }
  return ParseResponse(res->body, impl_->cfg.k);
}

std::unique_ptr<Predictor> MakePredictor(const PredictorConfig& cfg) {
  const PredictorConfig resolved = Resolve(cfg);
  if (resolved.mode == Mode::kRemote) return std::make_unique<RemotePredictor>(resolved);
  return std::make_unique<StubPredictor>(resolved.k);
}

std::vector<Prediction> Predict(Predictor& predictor, const MaskedSequence& seq,
                                const PredictorConfig& cfg) {
  if (seq.tokens.size() > cfg.window) {
    return predictor.Predict(targets::CropWindow(seq, cfg.window));
  }
  return predictor.Predict(seq);
}

std::optional<std::vector<Prediction>> PredictWithRetry(Predictor& predictor,
                                                        const MaskedSequence& seq,
                                                        const PredictorConfig& cfg) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      return Predict(predictor, seq, cfg);
    } catch (const RemoteUnavailable&) {
      // retried once, then reported as a failed target
    }
  }
  return std::nullopt;
}

}  // namespace mutalm::predictor
