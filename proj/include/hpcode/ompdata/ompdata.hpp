#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpcode/parse/omp_pragma.hpp"
#include "hpcode/parse/pragma_sites.hpp"

namespace hpcode::ompdata {

class Unnormalizable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical pragma form used as the dataset label: firstprivate and
// lastprivate fold into private, every `target teams distribute ...`
// variant collapses to the target base, unknown clauses are dropped.
struct NormalizedPragma {
  enum class Base { ParallelFor, TargetTeamsDistributeParallelFor };

  struct Reduction {
    std::string op;
    std::set<std::string> vars;
    bool operator==(const Reduction&) const = default;
  };

  Base base = Base::ParallelFor;
  bool simd = false;
  std::set<std::string> private_vars;
  std::optional<Reduction> reduction;

  std::string render() const;
  bool operator==(const NormalizedPragma&) const = default;
};

// Throws Unnormalizable for directives outside the loop-parallelizing set
// (e.g. `omp critical`).  Variables named in both private and reduction
// stay with reduction; OpenMP forbids the combination.
NormalizedPragma normalize_pragma(const parse::OmpPragma& pragma);

struct BenchRef {
  uint64_t file_id = 0;
  parse::Span loop_span;
  bool operator==(const BenchRef&) const = default;
};

// One dataset row: the bare `for` statement without surrounding context,
// labeled with its pragma when it had one.
struct LoopSample {
  std::string loop_code;
  std::optional<NormalizedPragma> label;
  std::optional<BenchRef> benchmark_ref;
  parse::Language language = parse::Language::C;
};

struct SourceInput {
  std::string text;
  parse::Language language = parse::Language::C;
  uint64_t file_id = 0;
};

struct ExtractOptions {
  bool balance = false;
  double neg_ratio = 1.0;
  uint64_t seed = 0;
};

// Positives: every pragma-annotated for loop.  Negatives: plain for loops
// outside positive loops; when balance is set, a seeded sample of
// ceil(neg_ratio x positives) of them (all of them, with a warning, when
// the pool is smaller).
std::vector<LoopSample> extract_dataset(const std::vector<SourceInput>& files,
                                        const ExtractOptions& options = {});

struct ClauseHistogram {
  struct Row {
    uint64_t private_count = 0;
    uint64_t reduction_count = 0;
    uint64_t target_count = 0;
    uint64_t plain_count = 0;  // neither private nor reduction
    uint64_t total = 0;
  };
  std::map<std::string, Row> per_language;
};

// Counts positive samples whose label carries each feature, per language.
// Plain pragmas are counted explicitly: total always exceeds the clause
// columns when bare `parallel for` dominates, so the gap is named.
ClauseHistogram clause_histogram(const std::vector<LoopSample>& samples);

}  // namespace hpcode::ompdata
