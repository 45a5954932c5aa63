#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "hpcode/ompdata/ompdata.hpp"

namespace hpcode::harness {

class EndpointUnreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instruction used verbatim when wiring a chat-style LLM endpoint to the
// generate stage.
inline constexpr std::string_view kGenerationPrompt =
    "Generate the optimal OpenMP pragma for the provided code";

struct ModelPrediction {
  bool parallelizable = false;
  double score = 0.0;
  std::optional<std::string> pragma;  // present iff parallelizable
  double latency_ms = 0.0;
  bool valid = true;       // false when the generated pragma fails to parse
  std::string note;        // diagnostic: InvalidGeneration, EndpointUnreachable
};

// Two-stage classify+generate model.  Implementations:
//   builtin:replay     ground-truth oracle (returns the sample's label)
//   builtin:heuristic  conservative static classifier + plain parallel for
//   offline:<path>     JSONL predictions keyed by "id" or position
//   http://host:port   POST /v1/classify and /v1/generate
class ModelEndpoint {
 public:
  virtual ~ModelEndpoint() = default;
  virtual ModelPrediction predict(const ompdata::LoopSample& sample,
                                  size_t index) = 0;
  virtual std::string name() const = 0;

  static std::unique_ptr<ModelEndpoint> open(const std::string& uri);
};

// Stable per-sample key for offline prediction files.
std::string sample_id(const ompdata::LoopSample& sample, size_t index);

// Runs the two-stage prediction and validates the generated pragma; an
// unparseable pragma is recorded as InvalidGeneration on the prediction
// rather than thrown.
ModelPrediction predict(ModelEndpoint& model, const ompdata::LoopSample& sample,
                        size_t index);

// The classification rule behind builtin:heuristic, exposed for tests:
// a loop is parallelizable only if its body has no return/break/goto and
// no write to a scalar declared outside the loop.
bool heuristic_parallelizable(const ompdata::LoopSample& sample);

}  // namespace hpcode::harness
