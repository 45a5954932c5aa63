#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpcode/ompdata/ompdata.hpp"

namespace hpcode::metrics {

class MissingOperand : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Outcome { TP, FP, TN, FN };

std::string_view outcome_name(Outcome o);

struct ConfusionCounts {
  uint64_t tp = 0;
  uint64_t fp = 0;
  uint64_t tn = 0;
  uint64_t fn = 0;

  // Zero denominators yield nullopt, never a silent 0 or 1.
  std::optional<double> precision() const;
  std::optional<double> recall() const;
  std::optional<double> accuracy() const;

  bool operator==(const ConfusionCounts&) const = default;
};

ConfusionCounts aggregate_confusion(const std::vector<Outcome>& outcomes);

enum class ClauseKind { Private, Reduction };

// Presence test for one clause kind; a null pragma carries no clauses.
Outcome clause_presence_eval(const std::optional<ompdata::NormalizedPragma>& pred,
                             const std::optional<ompdata::NormalizedPragma>& label,
                             ClauseKind kind);

// Order-free variable matching (Tasks III/IV).
struct VariableMatchResult {
  uint64_t tp = 0;
  uint64_t fp = 0;
  uint64_t fn = 0;
  bool operator==(const VariableMatchResult&) const = default;
};

VariableMatchResult variable_set_eval(const std::set<std::string>& pred_vars,
                                      const std::set<std::string>& label_vars);

// Task V: exact operator match after trimming.  Throws MissingOperand
// when either side lacks a reduction operator.
bool reduction_operator_eval(const std::optional<std::string>& pred_op,
                             const std::optional<std::string>& label_op);

}  // namespace hpcode::metrics
