#include "hpcode/harness/model.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <httplib.h>
#include <json.hpp>

#include "hpcode/parse/omp_pragma.hpp"
#include "hpcode/tokompiler/tokompiler.hpp"

namespace hpcode::harness {

using ompdata::LoopSample;

std::string sample_id(const LoopSample& sample, size_t index) {
  if (sample.benchmark_ref) {
    char buf[64];
    snprintf(buf, sizeof(buf), "%016llx:%u-%u",
             (unsigned long long)sample.benchmark_ref->file_id,
             sample.benchmark_ref->loop_span.begin,
             sample.benchmark_ref->loop_span.end);
    return buf;
  }
  return "i" + std::to_string(index);
}

namespace {

class ReplayModel final : public ModelEndpoint {
 public:
  ModelPrediction predict(const LoopSample& sample, size_t) override {
    ModelPrediction prediction;
    prediction.parallelizable = sample.label.has_value();
    prediction.score = prediction.parallelizable ? 1.0 : 0.0;
    if (sample.label) prediction.pragma = sample.label->render();
    return prediction;
  }
  std::string name() const override { return "builtin:replay"; }
};

class HeuristicModel final : public ModelEndpoint {
 public:
  ModelPrediction predict(const LoopSample& sample, size_t) override {
    ModelPrediction prediction;
    prediction.parallelizable = heuristic_parallelizable(sample);
    prediction.score = prediction.parallelizable ? 0.75 : 0.25;
    if (prediction.parallelizable) prediction.pragma = "#pragma omp parallel for";
    return prediction;
  }
  std::string name() const override { return "builtin:heuristic"; }
};

class OfflineModel final : public ModelEndpoint {
 public:
  explicit OfflineModel(const std::string& path) : path_(path) {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("cannot read predictions file " + path);
    std::string line;
    size_t position = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto record = nlohmann::json::parse(line);
      ModelPrediction prediction;
      prediction.parallelizable = record.value("parallelizable", false);
      prediction.score =
          record.value("score", prediction.parallelizable ? 1.0 : 0.0);
      if (record.contains("pragma") && !record["pragma"].is_null())
        prediction.pragma = record["pragma"].get<std::string>();
      if (record.contains("id"))
        by_id_[record["id"].get<std::string>()] = prediction;
      by_position_.push_back(std::move(prediction));
      ++position;
    }
  }

  ModelPrediction predict(const LoopSample& sample, size_t index) override {
    auto it = by_id_.find(sample_id(sample, index));
    if (it != by_id_.end()) return it->second;
    if (index < by_position_.size()) return by_position_[index];
    ModelPrediction missing;
    missing.valid = false;
    missing.note = "no offline prediction for sample " + std::to_string(index);
    return missing;
  }
  std::string name() const override { return "offline:" + path_; }

 private:
  std::string path_;
  std::unordered_map<std::string, ModelPrediction> by_id_;
  std::vector<ModelPrediction> by_position_;
};

class HttpModel final : public ModelEndpoint {
 public:
  explicit HttpModel(const std::string& base_url) : base_url_(base_url) {}

  ModelPrediction predict(const LoopSample& sample, size_t) override {
    ModelPrediction prediction;
    auto start = std::chrono::steady_clock::now();

    nlohmann::json request{{"code", sample.loop_code}};
    auto classify = post("/v1/classify", request.dump());
    if (!classify) {
      prediction.valid = false;
      prediction.note = "EndpointUnreachable: classify";
      return prediction;
    }
    auto classify_json = nlohmann::json::parse(*classify, nullptr, false);
    if (classify_json.is_discarded()) {
      prediction.valid = false;
      prediction.note = "classify response is not JSON";
      return prediction;
    }
    prediction.parallelizable = classify_json.value("parallelizable", false);
    prediction.score = classify_json.value("score", 0.0);

    if (prediction.parallelizable) {
      auto generate = post("/v1/generate", request.dump());
      if (!generate) {
        prediction.valid = false;
        prediction.note = "EndpointUnreachable: generate";
        return prediction;
      }
      auto generate_json = nlohmann::json::parse(*generate, nullptr, false);
      if (generate_json.is_discarded() || !generate_json.contains("pragma")) {
        prediction.valid = false;
        prediction.note = "generate response lacks a pragma";
        return prediction;
      }
      prediction.pragma = generate_json["pragma"].get<std::string>();
    }
    auto end = std::chrono::steady_clock::now();
    prediction.latency_ms =
        std::chrono::duration<double, std::milli>(end - start).count();
    return prediction;
  }

  std::string name() const override { return base_url_; }

 private:
  std::optional<std::string> post(const std::string& path,
                                  const std::string& body) {
    httplib::Client client(base_url_);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(60, 0);
    int delay_ms = 100;
    for (int attempt = 0; attempt < 3; ++attempt) {
      auto response = client.Post(path, body, "application/json");
      if (response && response->status == 200) return response->body;
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
      delay_ms *= 2;
    }
    return std::nullopt;
  }

  std::string base_url_;
};

}  // namespace

bool heuristic_parallelizable(const LoopSample& sample) {
  parse::SyntaxTree tree;
  try {
    tree = parse::parse_source(sample.loop_code, sample.language);
  } catch (const parse::DecodeError&) {
    return false;
  }
  if (tree.error_count() != 0) return false;

  // Find the outermost for loop in the snippet.
  std::optional<parse::Node> loop;
  tree.walk([&](const parse::Node& node) {
    if (loop) return false;
    std::string_view kind = node.kind();
    if (kind == "for_statement" || kind == "for_range_loop") {
      loop = node;
      return false;
    }
    return true;
  });
  if (!loop) return false;
  auto body = loop->child_by_field("body");
  if (!body) return false;

  // Names declared inside the snippet (induction variables, body locals)
  // may be written; writes to anything else carry state across iterations.
  std::unordered_set<std::string> local_names;
  for (auto& [name, category] : tokompiler::declared_symbols(tree))
    local_names.insert(name);

  bool rejected = false;
  int loop_depth = 0;

  std::function<void(const parse::Node&)> scan = [&](const parse::Node& node) {
    if (rejected) return;
    std::string_view kind = node.kind();
    if (kind == "return_statement" || kind == "goto_statement") {
      rejected = true;
      return;
    }
    if (kind == "break_statement" && loop_depth == 0) {
      rejected = true;
      return;
    }
    bool nested = kind == "for_statement" || kind == "while_statement" ||
                  kind == "do_statement" || kind == "switch_statement" ||
                  kind == "for_range_loop";
    if (nested) ++loop_depth;

    auto written_scalar = [&](const parse::Node& target) -> std::optional<std::string> {
      if (target.kind() == "identifier") return std::string(target.text());
      return std::nullopt;  // array/member writes: allowed (data parallel)
    };
    if (kind == "assignment_expression") {
      if (auto left = node.child_by_field("left")) {
        if (auto name = written_scalar(*left)) {
          if (!local_names.count(*name)) rejected = true;
        }
      }
    } else if (kind == "update_expression") {
      if (auto arg = node.child_by_field("argument")) {
        if (auto name = written_scalar(*arg)) {
          if (!local_names.count(*name)) rejected = true;
        }
      }
    }

    for (uint32_t i = 0; i < node.child_count() && !rejected; ++i)
      scan(node.child(i));
    if (nested) --loop_depth;
  };

  scan(*body);
  return !rejected;
}

ModelPrediction predict(ModelEndpoint& model, const LoopSample& sample,
                        size_t index) {
  auto start = std::chrono::steady_clock::now();
  ModelPrediction prediction = model.predict(sample, index);
  auto end = std::chrono::steady_clock::now();
  if (prediction.latency_ms == 0.0)
    prediction.latency_ms =
        std::chrono::duration<double, std::milli>(end - start).count();

  if (prediction.parallelizable && prediction.pragma) {
    // Usable means it parses AND is a loop-parallelizing directive; a typo
    // like "paralel" surfaces as an unknown directive.
    try {
      ompdata::normalize_pragma(parse::parse_omp_pragma(*prediction.pragma));
    } catch (const std::exception& e) {
      prediction.valid = false;
      prediction.note = std::string("InvalidGeneration: ") + e.what();
    }
  } else if (prediction.parallelizable && !prediction.pragma &&
             prediction.valid) {
    prediction.valid = false;
    prediction.note = "InvalidGeneration: classified positive without a pragma";
  }
  return prediction;
}

std::unique_ptr<ModelEndpoint> ModelEndpoint::open(const std::string& uri) {
  if (uri == "builtin:replay") return std::make_unique<ReplayModel>();
  if (uri == "builtin:heuristic") return std::make_unique<HeuristicModel>();
  if (uri.rfind("offline:", 0) == 0)
    return std::make_unique<OfflineModel>(uri.substr(8));
  if (uri.rfind("http://", 0) == 0 || uri.rfind("https://", 0) == 0)
    return std::make_unique<HttpModel>(uri);
  throw std::runtime_error("unknown model endpoint '" + uri + "'");
}

}  // namespace hpcode::harness
