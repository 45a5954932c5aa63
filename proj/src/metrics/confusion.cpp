#include "hpcode/metrics/confusion.hpp"

#include <algorithm>
#include <cctype>

namespace hpcode::metrics {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::TP: return "TP";
    case Outcome::FP: return "FP";
    case Outcome::TN: return "TN";
    case Outcome::FN: return "FN";
  }
  return "?";
}

std::optional<double> ConfusionCounts::precision() const {
  if (tp + fp == 0) return std::nullopt;
  return (double)tp / (double)(tp + fp);
}

std::optional<double> ConfusionCounts::recall() const {
  if (tp + fn == 0) return std::nullopt;
  return (double)tp / (double)(tp + fn);
}

std::optional<double> ConfusionCounts::accuracy() const {
  uint64_t total = tp + fp + tn + fn;
  if (total == 0) return std::nullopt;
  return (double)(tp + tn) / (double)total;
}

ConfusionCounts aggregate_confusion(const std::vector<Outcome>& outcomes) {
  ConfusionCounts counts;
  for (Outcome o : outcomes) {
    switch (o) {
      case Outcome::TP: ++counts.tp; break;
      case Outcome::FP: ++counts.fp; break;
      case Outcome::TN: ++counts.tn; break;
      case Outcome::FN: ++counts.fn; break;
    }
  }
  return counts;
}

namespace {

bool has_clause(const std::optional<ompdata::NormalizedPragma>& pragma,
                ClauseKind kind) {
  if (!pragma) return false;
  return kind == ClauseKind::Private ? !pragma->private_vars.empty()
                                     : pragma->reduction.has_value();
}

}  // namespace

Outcome clause_presence_eval(const std::optional<ompdata::NormalizedPragma>& pred,
                             const std::optional<ompdata::NormalizedPragma>& label,
                             ClauseKind kind) {
  bool in_pred = has_clause(pred, kind);
  bool in_label = has_clause(label, kind);
  if (in_pred && in_label) return Outcome::TP;
  if (in_label) return Outcome::FN;
  if (in_pred) return Outcome::FP;
  return Outcome::TN;
}

VariableMatchResult variable_set_eval(const std::set<std::string>& pred_vars,
                                      const std::set<std::string>& label_vars) {
  VariableMatchResult result;
  for (const auto& v : pred_vars)
    label_vars.count(v) ? ++result.tp : ++result.fp;
  for (const auto& v : label_vars)
    if (!pred_vars.count(v)) ++result.fn;
  return result;
}

bool reduction_operator_eval(const std::optional<std::string>& pred_op,
                             const std::optional<std::string>& label_op) {
  if (!pred_op || !label_op)
    throw MissingOperand("both sides need a reduction operator");
  auto trim = [](const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace((unsigned char)s[b])) ++b;
    while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
    return s.substr(b, e - b);
  };
  return trim(*pred_op) == trim(*label_op);
}

}  // namespace hpcode::metrics
