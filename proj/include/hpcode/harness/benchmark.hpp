#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hpcode/parse/syntax_tree.hpp"

namespace hpcode::harness {

struct BenchmarkSpec {
  std::string name;
  std::vector<std::filesystem::path> sources;
  std::string build;  // template with {src} and {bin}
  std::string run;    // template with {bin}
  std::string expected_output;          // embedded reference
  std::optional<std::filesystem::path> expected_file;  // or a file
  double timeout_s = 600.0;
  std::map<std::string, std::string> env;
  bool numeric_compare = false;  // per-line numeric fields with rel_eps
  double rel_eps = 1e-6;

  static BenchmarkSpec from_json_file(const std::filesystem::path& path);
  std::string expected() const;
};

enum class Verdict { Pass, CompileFail, RunFail, OutputMismatch, Timeout };

std::string_view verdict_name(Verdict v);

struct RunOutcome {
  Verdict verdict = Verdict::CompileFail;
  std::optional<double> wall_time_s;  // present iff Pass or OutputMismatch
  int threads = 0;                    // 0: default environment (no override)
  std::string diagnostics;
};

struct PatchedSource {
  std::filesystem::path path;  // original path (basename used in builddir)
  std::string text;
};

// Builds the benchmark in a scratch directory, runs it `repeats` times
// with OMP_NUM_THREADS=threads (unset when threads <= 0), compares stdout
// against the expected reference.  Any mismatch across the repeats is a
// mismatch; wall time is the median over completed runs.
RunOutcome compile_and_run(const BenchmarkSpec& bench,
                           const std::vector<PatchedSource>& sources,
                           int threads, int repeats = 3);

// Output comparison used by compile_and_run, exposed for tests.
bool outputs_match(const BenchmarkSpec& bench, std::string_view actual);

}  // namespace hpcode::harness
