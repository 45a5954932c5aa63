#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hpcode/harness/benchmark.hpp"
#include "hpcode/harness/model.hpp"
#include "hpcode/metrics/confusion.hpp"
#include "hpcode/metrics/speedup.hpp"

namespace hpcode::harness {

class SpanDrift : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingVerdict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SampleVerdict {
  size_t index = 0;
  metrics::Outcome outcome = metrics::Outcome::TN;
  ModelPrediction prediction;
};

struct ConfusionReport {
  metrics::ConfusionCounts counts;
  std::vector<SampleVerdict> samples;  // retained for reclassification
};

// Runs the model over the dataset: a positive prediction against a
// labeled sample is a TP, against an unlabeled one an FP, and so on.
ConfusionReport accuracy_test(const std::vector<ompdata::LoopSample>& dataset,
                              ModelEndpoint& model);

// Replaces whatever pragma precedes the for statement at `loop_span` with
// `pragma`, preserving the loop line's indentation.  Throws SpanDrift when
// the span no longer points at a for statement.
std::string inject_pragma(std::string_view benchmark_source,
                          parse::Span loop_span, std::string_view pragma,
                          parse::Language language);

// Promotes false positives whose compile-and-run verdict is Pass to true
// positives ("compile and run tests have higher credibility" than labels).
// Requires a verdict for every FP sample.
ConfusionReport reclassify_fp(const ConfusionReport& report,
                              const std::map<size_t, RunOutcome>& fp_verdicts);

struct ScaleEntry {
  RunOutcome outcome;
  std::optional<double> speedup;  // baseline_time / run_time, Pass only
  std::optional<metrics::SpeedupBucket> bucket;
};

struct ScaleReport {
  struct PerBenchmark {
    std::string name;
    std::optional<double> baseline_time_s;
    std::string baseline_error;  // set when the baseline run failed
    std::map<int, ScaleEntry> by_threads;
  };
  std::vector<PerBenchmark> benchmarks;
  std::vector<int> thread_list;
  unsigned logical_cores = 0;  // the baseline's "default setting" is
                               // hardware dependent; recorded per report

  // bucket histogram per thread count over Pass outcomes
  std::map<int, std::map<metrics::SpeedupBucket, size_t>> histograms() const;
};

struct ScaleInput {
  BenchmarkSpec spec;
  std::vector<PatchedSource> sources;
};

// Baseline = run with no OMP_NUM_THREADS override; then one timed run per
// thread count.  Per-benchmark failures are recorded, never fatal.
ScaleReport scale_test(const std::vector<ScaleInput>& benchmarks,
                       const std::vector<int>& thread_list = {1, 4, 8, 16},
                       int repeats = 3);

}  // namespace hpcode::harness
