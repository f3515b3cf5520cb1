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

#ifndef MUTALM_PREDICTOR_H_
#define MUTALM_PREDICTOR_H_

#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mutalm/targets.h"
#include "json.hpp"

namespace mutalm::predictor {

inline constexpr char kEndpointEnv[] = "MUTALM_PREDICTOR_URL";

struct Prediction {
  std::string token_text;
  double score = 0.0;
  int rank = 0;  // 1-based

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

enum class Mode { kRemote, kStub };

struct PredictorConfig {
  int k = 5;
  std::optional<std::string> endpoint;
  Mode mode = Mode::kStub;
  std::chrono::milliseconds timeout{30000};
  std::size_t window = targets::kDefaultWindow;
  unsigned max_in_flight = 4;
};

// Applies MUTALM_PREDICTOR_URL and checks k >= 1, window >= 1 and that
// remote mode has an endpoint. Throws Error on violation.
PredictorConfig Resolve(PredictorConfig cfg);

// Syntactic role of the masked position; selects the stub's candidate pool.
enum class Slot {
  kLiteral,
  kIdentifier,
  kBinaryOperator,
  kUnaryOperator,
  kAssignmentPrefix,
  kObjectField,
  kMethodName,
  kStaticTypeRef,
};

const char* SlotName(Slot slot);
Slot SlotForKind(targets::NodeKind kind);

// Best-effort slot from the surrounding lexemes only. Literal slots cannot
// be told apart from identifier slots this way and come back as
// kIdentifier.
Slot InferSlot(const std::vector<std::string>& tokens, std::size_t mask_index);

// Request body of the fill-mask protocol.
struct FillMaskRequest {
  std::vector<std::string> tokens;
  std::size_t mask_index = 0;
  int k = 5;
};

nlohmann::json ToJson(const FillMaskRequest& request);
// Throws ProtocolError on schema violations.
FillMaskRequest RequestFromJson(const nlohmann::json& body);
FillMaskRequest MakeRequest(const targets::MaskedSequence& seq, int k);

nlohmann::json ResponseToJson(const std::vector<Prediction>& predictions);
// Parses a response body and normalizes it: drops empty, multi-line and
// placeholder tokens, orders by (score desc, token asc), keeps k, assigns
// ranks. Throws ProtocolError on malformed JSON or schema violations.
std::vector<Prediction> ParseResponse(const std::string& body, int k);

// Deterministic offline predictor. Pool by slot, ordered by a 64-bit hash
// of (entry, up to 4 tokens either side of the mask), scores 1/2^rank.
std::vector<Prediction> StubPredict(const std::vector<std::string>& tokens,
                                    std::size_t mask_index, int k, Slot slot);
// Wire form: slot inferred from context.
std::vector<Prediction> StubPredict(const FillMaskRequest& request);
// In-process form: slot taken from the masked target's node kind.
std::vector<Prediction> StubPredict(const targets::MaskedSequence& seq, int k);

class Predictor {
 public:
  virtual ~Predictor() = default;
  // Throws RemoteUnavailable or ProtocolError.
  virtual std::vector<Prediction> Predict(const targets::MaskedSequence& seq) = 0;
};

class StubPredictor final : public Predictor {
 public:
  explicit StubPredictor(int k) : k_(k) {}
  std::vector<Prediction> Predict(const targets::MaskedSequence& seq) override;

 private:
  int k_;
};

// HTTP client for POST {endpoint}/predict. Safe to call from several
// threads; at most max_in_flight requests are outstanding at once.
class RemotePredictor final : public Predictor {
 public:
  explicit RemotePredictor(const PredictorConfig& cfg);
  ~RemotePredictor() override;
  std::vector<Prediction> Predict(const targets::MaskedSequence& seq) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::unique_ptr<Predictor> MakePredictor(const PredictorConfig& cfg);

// Crops to cfg.window and asks the predictor.
std::vector<Prediction> Predict(Predictor& predictor,
                                const targets::MaskedSequence& seq,
                                const PredictorConfig& cfg);

// One retry on RemoteUnavailable; nullopt when both attempts fail.
// ProtocolError propagates.
std::optional<std::vector<Prediction>> PredictWithRetry(
    Predictor& predictor, const targets::MaskedSequence& seq,
    const PredictorConfig& cfg);

}  // namespace mutalm::predictor

#endif  // MUTALM_PREDICTOR_H_
