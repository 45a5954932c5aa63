#include "hpcode/harness/harness.hpp"

#include <algorithm>
#include <thread>

#include "hpcode/parse/pragma_sites.hpp"

namespace hpcode::harness {

using metrics::Outcome;

ConfusionReport accuracy_test(const std::vector<ompdata::LoopSample>& dataset,
                              ModelEndpoint& model) {
  ConfusionReport report;
  for (size_t i = 0; i < dataset.size(); ++i) {
    const auto& sample = dataset[i];
    ModelPrediction prediction = predict(model, sample, i);
    bool predicted = prediction.parallelizable;
    bool labeled = sample.label.has_value();
    Outcome outcome = predicted ? (labeled ? Outcome::TP : Outcome::FP)
                                : (labeled ? Outcome::FN : Outcome::TN);
    switch (outcome) {
      case Outcome::TP: ++report.counts.tp; break;
      case Outcome::FP: ++report.counts.fp; break;
      case Outcome::TN: ++report.counts.tn; break;
      case Outcome::FN: ++report.counts.fn; break;
    }
    report.samples.push_back(SampleVerdict{i, outcome, std::move(prediction)});
  }
  return report;
}

std::string inject_pragma(std::string_view benchmark_source,
                          parse::Span loop_span, std::string_view pragma,
                          parse::Language language) {
  parse::SyntaxTree tree = parse::parse_source(benchmark_source, language);

  // The span must still be a for statement.
  bool found = false;
  tree.walk([&](const parse::Node& node) {
    if (found) return false;
    std::string_view kind = node.kind();
    if ((kind == "for_statement" || kind == "for_range_loop") &&
        node.span() == loop_span) {
      found = true;
      return false;
    }
    return node.span().contains(loop_span);
  });
  if (!found)
    throw SpanDrift("no for statement at bytes [" +
                    std::to_string(loop_span.begin) + "," +
                    std::to_string(loop_span.end) + ")");

  // Drop any pragma line(s) directly above the loop (whitespace between
  // them and the loop is fine).
  std::string out(benchmark_source);
  size_t insert_at = loop_span.begin;
  parse::PragmaScan scan = parse::find_pragma_sites(tree);
  std::vector<parse::Span> to_remove;
  for (const auto& site : scan.sites)
    if (site.loop_span == loop_span) to_remove.push_back(site.pragma_span);
  std::sort(to_remove.begin(), to_remove.end(),
            [](const parse::Span& a, const parse::Span& b) {
              return a.begin > b.begin;
            });
  for (const auto& span : to_remove) {
    size_t begin = span.begin;
    while (begin > 0 && (out[begin - 1] == ' ' || out[begin - 1] == '\t'))
      --begin;
    size_t end = span.end;
    if (end > 0 && out[end - 1] != '\n' && end < out.size() && out[end] == '\n')
      ++end;
    out.erase(begin, end - begin);
    insert_at -= (end - begin);
  }

  // Indent the pragma like the loop line itself.
  size_t line_start = insert_at;
  while (line_start > 0 && out[line_start - 1] != '\n') --line_start;
  std::string indent = out.substr(line_start, insert_at - line_start);
  if (indent.find_first_not_of(" \t") != std::string::npos) indent.clear();

  std::string pragma_line = std::string(pragma);
  while (!pragma_line.empty() &&
         (pragma_line.back() == '\n' || pragma_line.back() == '\r'))
    pragma_line.pop_back();
  out.insert(insert_at, pragma_line + "\n" + indent);
  return out;
}

ConfusionReport reclassify_fp(const ConfusionReport& report,
                              const std::map<size_t, RunOutcome>& fp_verdicts) {
  ConfusionReport adjusted;
  adjusted.samples = report.samples;
  for (auto& sample : adjusted.samples) {
    if (sample.outcome == Outcome::FP) {
      auto it = fp_verdicts.find(sample.index);
      if (it == fp_verdicts.end())
        throw MissingVerdict("false positive sample " +
                             std::to_string(sample.index) +
                             " lacks a compile-and-run verdict");
      if (it->second.verdict == Verdict::Pass) sample.outcome = Outcome::TP;
    }
    switch (sample.outcome) {
      case Outcome::TP: ++adjusted.counts.tp; break;
      case Outcome::FP: ++adjusted.counts.fp; break;
      case Outcome::TN: ++adjusted.counts.tn; break;
      case Outcome::FN: ++adjusted.counts.fn; break;
    }
  }
  return adjusted;
}

std::map<int, std::map<metrics::SpeedupBucket, size_t>>
ScaleReport::histograms() const {
  std::map<int, std::map<metrics::SpeedupBucket, size_t>> out;
  for (const auto& bench : benchmarks)
    for (const auto& [threads, entry] : bench.by_threads)
      if (entry.bucket) ++out[threads][*entry.bucket];
  return out;
}

ScaleReport scale_test(const std::vector<ScaleInput>& benchmarks,
                       const std::vector<int>& thread_list, int repeats) {
  ScaleReport report;
  report.thread_list = thread_list;
  report.logical_cores = std::thread::hardware_concurrency();

  for (const auto& input : benchmarks) {
    ScaleReport::PerBenchmark per;
    per.name = input.spec.name;

    // Baseline: the benchmark in its default setting, no thread override.
    RunOutcome baseline = compile_and_run(input.spec, input.sources,
                                          /*threads=*/0, repeats);
    if (baseline.verdict == Verdict::Pass) {
      per.baseline_time_s = baseline.wall_time_s;
    } else {
      per.baseline_error = std::string(verdict_name(baseline.verdict)) + ": " +
                           baseline.diagnostics;
    }

    for (int threads : thread_list) {
      ScaleEntry entry;
      entry.outcome = compile_and_run(input.spec, input.sources, threads, repeats);
      if (per.baseline_time_s && entry.outcome.verdict == Verdict::Pass &&
          entry.outcome.wall_time_s && *entry.outcome.wall_time_s > 0) {
        entry.speedup = *per.baseline_time_s / *entry.outcome.wall_time_s;
        entry.bucket = metrics::bucket_speedup(*entry.speedup);
      }
      per.by_threads[threads] = std::move(entry);
    }
    report.benchmarks.push_back(std::move(per));
  }
  return report;
}

}  // namespace hpcode::harness
