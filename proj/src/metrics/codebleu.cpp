#include "hpcode/metrics/codebleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "hpcode/parse/printer.hpp"

namespace hpcode::metrics {

using parse::Language;
using parse::Node;
using parse::SyntaxTree;

namespace {

const std::unordered_set<std::string_view>& c_keywords() {
  static const std::unordered_set<std::string_view> kw = {
      "auto",     "break",    "case",     "char",   "const",    "continue",
      "default",  "do",       "double",   "else",   "enum",     "extern",
      "float",    "for",      "goto",     "if",     "inline",   "int",
      "long",     "register", "restrict", "return", "short",    "signed",
      "sizeof",   "static",   "struct",   "switch", "typedef",  "union",
      "unsigned", "void",     "volatile", "while",  "_Bool",    "_Complex",
      "_Atomic",  "_Generic", "_Noreturn"};
  return kw;
}

const std::unordered_set<std::string_view>& cpp_keywords() {
  static const std::unordered_set<std::string_view> kw = [] {
    std::unordered_set<std::string_view> set = c_keywords();
    for (std::string_view w :
         {"alignas",   "alignof",      "bool",        "catch",
          "class",     "constexpr",    "consteval",   "constinit",
          "const_cast", "decltype",    "delete",      "dynamic_cast",
          "explicit",  "export",       "false",       "friend",
          "mutable",   "namespace",    "new",         "noexcept",
          "nullptr",   "operator",     "private",     "protected",
          "public",    "reinterpret_cast", "static_assert", "static_cast",
          "template",  "this",         "throw",       "true",
          "try",       "typeid",       "typename",    "using",
          "virtual",   "wchar_t",      "co_await",    "co_return",
          "co_yield",  "concept",      "requires"})
      set.insert(w);
    return set;
  }();
  return kw;
}

using Counts = std::map<std::vector<std::string>, int>;

Counts ngram_counts(const std::vector<std::string>& tokens, int n) {
  Counts counts;
  if ((int)tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  return counts;
}

struct Precision {
  double matched = 0;
  double total = 0;
};

// Clipped n-gram precision; weight_fn scores one n-gram instance.
template <typename WeightFn>
Precision modified_precision(const std::vector<std::string>& candidate,
                             const std::vector<std::string>& reference, int n,
                             WeightFn&& weight_fn) {
  Counts cand = ngram_counts(candidate, n);
  Counts ref = ngram_counts(reference, n);
  Precision p;
  for (const auto& [gram, count] : cand) {
    double w = weight_fn(gram);
    p.total += w * count;
    auto it = ref.find(gram);
    if (it != ref.end()) p.matched += w * std::min(count, it->second);
  }
  return p;
}

template <typename WeightFn>
std::optional<double> bleu(const std::vector<std::string>& candidate,
                           const std::vector<std::string>& reference,
                           int max_n, WeightFn&& weight_fn) {
  double log_sum = 0.0;
  int used = 0;
  for (int n = 1; n <= max_n; ++n) {
    Precision p = modified_precision(candidate, reference, n, weight_fn);
    if (p.total <= 0) continue;  // candidate shorter than n
    double pn = p.matched / p.total;
    if (pn == 0.0) {
      if (n == 1) return 0.0;  // nothing matches at all
      pn = 1.0 / (2.0 * p.total);  // smooth zero higher-order counts
    }
    log_sum += std::log(pn);
    ++used;
  }
  if (used == 0) return std::nullopt;
  double geo_mean = std::exp(log_sum / used);
  double c = (double)candidate.size(), r = (double)reference.size();
  double brevity = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return geo_mean * brevity;
}

// Depth-bounded S-expression of the subtree rooted at `node`; leaf kinds
// only, never leaf text, so renamed identifiers still match.
void serialize_subtree(const Node& node, int depth, std::string& out) {
  out += node.kind();
  if (depth == 0 || node.named_child_count() == 0) return;
  out += "(";
  for (uint32_t i = 0; i < node.named_child_count(); ++i) {
    if (i) out += ",";
    serialize_subtree(node.named_child(i), depth - 1, out);
  }
  out += ")";
}

std::map<std::string, int> subtree_multiset(const SyntaxTree& tree, int depth) {
  std::map<std::string, int> out;
  tree.walk([&](const Node& node) {
    if (!node.is_named()) return true;
    if (node.named_child_count() == 0) return true;
    std::string repr;
    serialize_subtree(node, depth, repr);
    ++out[repr];
    return true;
  });
  return out;
}

std::optional<double> multiset_match(const std::map<std::string, int>& cand,
                                     const std::map<std::string, int>& ref) {
  long long total = 0, matched = 0;
  for (const auto& [key, count] : ref) total += count;
  if (total == 0) return std::nullopt;
  for (const auto& [key, count] : ref) {
    auto it = cand.find(key);
    if (it != cand.end()) matched += std::min(count, it->second);
  }
  return (double)matched / (double)total;
}

std::optional<double> multiset_match(const std::vector<DataflowEdge>& cand,
                                     const std::vector<DataflowEdge>& ref) {
  if (ref.empty()) return std::nullopt;
  std::map<DataflowEdge, int> cand_counts;
  for (const auto& e : cand) ++cand_counts[e];
  long long matched = 0;
  std::map<DataflowEdge, int> ref_counts;
  for (const auto& e : ref) ++ref_counts[e];
  for (const auto& [edge, count] : ref_counts) {
    auto it = cand_counts.find(edge);
    if (it != cand_counts.end()) matched += std::min(count, it->second);
  }
  return (double)matched / (double)ref.size();
}

}  // namespace

bool is_language_keyword(std::string_view token, Language language) {
  const auto& kw = language == Language::C ? c_keywords() : cpp_keywords();
  return kw.count(token) > 0;
}

std::vector<std::string> lexical_tokens(std::string_view text,
                                        Language language) {
  std::vector<std::string> tokens;
  try {
    SyntaxTree tree = parse::parse_source(text, language);
    tokens = parse::code_tokens(tree, parse::TokenOptions{.split_preproc = true});
  } catch (const parse::DecodeError& e) {
    throw TokenizeFailure(e.what());
  }
  if (tokens.empty()) throw TokenizeFailure("input yields no tokens");
  return tokens;
}

std::vector<DataflowEdge> dataflow_edges(const SyntaxTree& tree) {
  // Occurrences of plain identifiers in byte order, classified def/use.
  struct Occurrence {
    std::string name;
    bool is_def = false;
    bool is_use = false;
  };
  std::vector<Occurrence> occurrences;

  tree.walk([&](const Node& node) {
    if (node.kind() != "identifier") return true;
    if (node.child_count() != 0) return true;

    Occurrence occ{std::string(node.text()), false, false};
    auto parent = node.parent();
    std::string_view pk = parent ? parent->kind() : std::string_view();

    if (pk == "init_declarator" || pk == "declaration" ||
        pk == "parameter_declaration" || pk == "pointer_declarator" ||
        pk == "array_declarator" || pk == "reference_declarator") {
      // Declarator position defines; an array size expression uses.
      bool is_declarator_name = false;
      if (auto field = parent->child_by_field("declarator"))
        is_declarator_name = *field == node;
      occ.is_def = is_declarator_name;
      occ.is_use = !is_declarator_name;
    } else if (pk == "assignment_expression") {
      auto left = parent->child_by_field("left");
      bool is_left = left && *left == node;
      std::string_view op_text;
      if (auto op = parent->child_by_field("operator")) op_text = op->text();
      if (is_left) {
        occ.is_def = true;
        occ.is_use = op_text != "=";  // compound assignment also reads
      } else {
        occ.is_use = true;
      }
    } else if (pk == "update_expression") {
      occ.is_def = true;
      occ.is_use = true;
    } else {
      occ.is_use = true;
    }
    occurrences.push_back(std::move(occ));
    return true;
  });

  std::unordered_map<std::string, int> var_rank;
  std::unordered_map<std::string, int> occurrence_counter;
  std::unordered_map<std::string, std::vector<int>> defs_so_far;
  std::vector<DataflowEdge> edges;

  for (const auto& occ : occurrences) {
    auto [it, inserted] = var_rank.try_emplace(occ.name, (int)var_rank.size());
    int rank = it->second;
    int ordinal = occurrence_counter[occ.name]++;
    if (occ.is_use)
      for (int def_ordinal : defs_so_far[occ.name])
        edges.push_back(DataflowEdge{rank, def_ordinal, ordinal});
    if (occ.is_def) defs_so_far[occ.name].push_back(ordinal);
  }
  return edges;
}

CodeBleuScore codebleu(std::string_view candidate, std::string_view reference,
                       Language language, const CodeBleuWeights& weights) {
  CodeBleuScore score;
  score.weights = weights;

  auto cand_tokens = lexical_tokens(candidate, language);
  auto ref_tokens = lexical_tokens(reference, language);

  score.ngram = bleu(cand_tokens, ref_tokens, weights.max_n,
                     [](const std::vector<std::string>&) { return 1.0; });

  double kw_weight = weights.keyword_weight;
  score.weighted_ngram =
      bleu(cand_tokens, ref_tokens, weights.max_n,
           [&](const std::vector<std::string>& gram) {
             double sum = 0;
             for (const auto& token : gram)
               sum += is_language_keyword(token, language) ? kw_weight : 1.0;
             return sum / (double)gram.size();
           });

  SyntaxTree cand_tree = parse::parse_source(candidate, language);
  SyntaxTree ref_tree = parse::parse_source(reference, language);

  score.ast_match = multiset_match(subtree_multiset(cand_tree, weights.ast_depth),
                                   subtree_multiset(ref_tree, weights.ast_depth));
  score.dataflow_match =
      multiset_match(dataflow_edges(cand_tree), dataflow_edges(ref_tree));

  // Combine; absent components give their weight to the present ones.
  double weight_sum = 0.0;
  double total = 0.0;
  auto add = [&](const std::optional<double>& component, double weight) {
    if (!component) return;
    weight_sum += weight;
    total += weight * *component;
  };
  add(score.ngram, weights.ngram);
  add(score.weighted_ngram, weights.weighted_ngram);
  add(score.ast_match, weights.ast);
  add(score.dataflow_match, weights.dataflow);
  score.combined = weight_sum > 0 ? total / weight_sum : 0.0;
  return score;
}

}  // namespace hpcode::metrics
