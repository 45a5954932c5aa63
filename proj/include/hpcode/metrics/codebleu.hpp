#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hpcode/parse/syntax_tree.hpp"

namespace hpcode::metrics {

class TokenizeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CodeBleuWeights {
  double ngram = 0.25;
  double weighted_ngram = 0.25;
  double ast = 0.25;
  double dataflow = 0.25;

  double keyword_weight = 5.0;  // unigram weight for language keywords
  int max_n = 4;
  int ast_depth = 3;  // subtree serialization depth bound
};

struct CodeBleuScore {
  std::optional<double> ngram;
  std::optional<double> weighted_ngram;
  std::optional<double> ast_match;
  std::optional<double> dataflow_match;
  double combined = 0.0;
  CodeBleuWeights weights;
};

// CodeBLEU for one candidate/reference pair.  Components that are
// undefined for the reference (e.g. no def-use edges) drop out and their
// weight is redistributed proportionally over the rest.
CodeBleuScore codebleu(std::string_view candidate, std::string_view reference,
                       parse::Language language,
                       const CodeBleuWeights& weights = {});

// Fine-grained lexical tokens for metric computation (directive lines
// split into words).  Throws TokenizeFailure when nothing tokenizes.
std::vector<std::string> lexical_tokens(std::string_view text,
                                        parse::Language language);

bool is_language_keyword(std::string_view token, parse::Language language);

// Name-normalized def-use edges: (variable rank by first occurrence,
// def ordinal, use ordinal).  Conservative: every use pairs with every
// earlier definition of the same variable.
struct DataflowEdge {
  int var = 0;
  int def = 0;
  int use = 0;
  auto operator<=>(const DataflowEdge&) const = default;
};

std::vector<DataflowEdge> dataflow_edges(const parse::SyntaxTree& tree);

}  // namespace hpcode::metrics
