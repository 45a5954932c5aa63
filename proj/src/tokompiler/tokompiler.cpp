#include "hpcode/tokompiler/tokompiler.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <unordered_set>

#include "hpcode/parse/printer.hpp"

namespace hpcode::tokompiler {

using parse::Node;
using parse::Span;
using parse::SyntaxTree;

std::string_view category_prefix(Category c) {
  switch (c) {
    case Category::Func: return "func";
    case Category::Var: return "var";
    case Category::Arr: return "arr";
    case Category::Num: return "num";
    case Category::Str: return "str";
  }
  return "var";
}

const RenameMap::Entry* RenameMap::by_original(std::string_view symbol) const {
  for (const auto& e : entries)
    if (e.original == symbol) return &e;
  return nullptr;
}

const RenameMap::Entry* RenameMap::by_replacement(std::string_view token) const {
  for (const auto& e : entries)
    if (e.replacement == token) return &e;
  return nullptr;
}

bool looks_like_replacement(std::string_view token) {
  size_t underscore = token.rfind('_');
  if (underscore == std::string_view::npos || underscore + 1 >= token.size())
    return false;
  std::string_view prefix = token.substr(0, underscore);
  if (prefix != "func" && prefix != "var" && prefix != "arr" &&
      prefix != "num" && prefix != "str")
    return false;
  for (char c : token.substr(underscore + 1))
    if (!std::isdigit((unsigned char)c)) return false;
  return true;
}

uint64_t derive_seed(uint64_t global_seed, uint64_t file_id, Span span) {
  auto mix = [](uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  };
  uint64_t h = mix(global_seed);
  h = mix(h ^ file_id);
  h = mix(h ^ span.begin);
  h = mix(h ^ span.end);
  return h;
}

namespace {

bool is_identifier_kind(std::string_view kind) {
  return kind == "identifier" || kind == "field_identifier" ||
         kind == "type_identifier" || kind == "statement_identifier" ||
         kind == "namespace_identifier";
}

struct DeclFlags {
  bool array = false;
  bool function = false;
  bool pointer = false;
};

// Follows a declarator chain to the declared name node, recording which
// wrappers it passed through.
std::optional<Node> resolve_declarator(Node node, DeclFlags& flags) {
  for (;;) {
    std::string_view kind = node.kind();
    if (is_identifier_kind(kind)) return node;
    if (kind == "array_declarator") flags.array = true;
    if (kind == "function_declarator") flags.function = true;
    if (kind == "pointer_declarator" || kind == "reference_declarator")
      flags.pointer = true;
    if (auto inner = node.child_by_field("declarator")) {
      node = *inner;
      continue;
    }
    if (kind == "parenthesized_declarator" && node.named_child_count() > 0) {
      node = node.named_child(0);
      continue;
    }
    return std::nullopt;
  }
}

struct Collected {
  // symbol/literal -> category, plus first-occurrence order for suffixes
  std::vector<std::pair<std::string, Category>> ordered;
  std::unordered_set<std::string> seen;

  void add(std::string text, Category category) {
    if (seen.insert(text).second) ordered.emplace_back(std::move(text), category);
  }
};

void collect_declaration_names(const SyntaxTree& tree, Collected& out) {
  tree.walk([&](const Node& node) {
    std::string_view kind = node.kind();

    auto add_declarators = [&](Category fallback) {
      for (const Node& child : node.children()) {
        std::string_view ck = child.kind();
        bool declaratorish = ck == "init_declarator" ||
                             ck == "array_declarator" ||
                             ck == "pointer_declarator" ||
                             ck == "reference_declarator" ||
                             ck == "function_declarator" ||
                             ck == "parenthesized_declarator" ||
                             ck == "attributed_declarator" ||
                             is_identifier_kind(ck);
        if (!declaratorish) continue;
        // Type words (primitive_type, type_identifier) appear before the
        // declarator; skip type_identifier children that are the type.
        if (ck == "type_identifier" || ck == "namespace_identifier") continue;
        if (ck == "field_identifier" && kind != "field_declaration") continue;
        DeclFlags flags;
        Node start = child;
        if (auto named = resolve_declarator(start, flags)) {
          Category cat = flags.array ? Category::Arr
                                     : (flags.function && !flags.pointer
                                            ? Category::Func
                                            : fallback);
          out.add(std::string(named->text()), cat);
        }
      }
    };

    if (kind == "function_definition") {
      if (auto declarator = node.child_by_field("declarator")) {
        DeclFlags flags;
        if (auto named = resolve_declarator(*declarator, flags))
          out.add(std::string(named->text()), Category::Func);
      }
    } else if (kind == "declaration" || kind == "field_declaration") {
      add_declarators(Category::Var);
    } else if (kind == "parameter_declaration" ||
               kind == "optional_parameter_declaration") {
      if (auto declarator = node.child_by_field("declarator")) {
        DeclFlags flags;
        if (auto named = resolve_declarator(*declarator, flags))
          out.add(std::string(named->text()),
                  flags.array ? Category::Arr : Category::Var);
      }
    } else if (kind == "struct_specifier" || kind == "union_specifier" ||
               kind == "enum_specifier" || kind == "class_specifier") {
      // Only specifiers that carry a body declare a new local type.
      if (node.child_by_field("body")) {
        if (auto name = node.child_by_field("name"))
          out.add(std::string(name->text()), Category::Var);
      }
    } else if (kind == "type_definition") {
      if (auto declarator = node.child_by_field("declarator")) {
        DeclFlags flags;
        if (auto named = resolve_declarator(*declarator, flags))
          out.add(std::string(named->text()), Category::Var);
      }
    } else if (kind == "enumerator") {
      if (auto name = node.child_by_field("name"))
        out.add(std::string(name->text()), Category::Var);
    } else if (kind == "labeled_statement") {
      if (auto label = node.child_by_field("label"))
        out.add(std::string(label->text()), Category::Var);
    } else if (kind == "for_range_loop") {
      if (auto declarator = node.child_by_field("declarator")) {
        DeclFlags flags;
        if (auto named = resolve_declarator(*declarator, flags))
          out.add(std::string(named->text()),
                  flags.array ? Category::Arr : Category::Var);
      }
    }
    return true;
  });
}

bool is_literal_kind(std::string_view kind) {
  return kind == "number_literal" || kind == "char_literal" ||
         kind == "string_literal" || kind == "raw_string_literal" ||
         kind == "concatenated_string";
}

bool inside_preproc(const Node& node) {
  for (auto p = node.parent(); p; p = p->parent()) {
    std::string_view k = p->kind();
    if (k.starts_with("preproc_")) return true;
  }
  return false;
}

void collect_literals(const SyntaxTree& tree, Collected& out) {
  tree.walk([&](const Node& node) {
    std::string_view kind = node.kind();
    if (!is_literal_kind(kind)) return true;
    if (inside_preproc(node)) return false;
    Category cat = (kind == "number_literal" || kind == "char_literal")
                       ? Category::Num
                       : Category::Str;
    out.add(std::string(node.text()), cat);
    return false;  // adjacent string pieces are replaced as one literal
  });
}

// Rewrites whole-word identifiers inside raw directive text (pragmas
// reference locals by name).
std::string rename_words(std::string_view text, const RenameMap& map) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = text[i];
    if (std::isalpha(c) || c == '_') {
      size_t start = i;
      while (i < text.size() &&
             (std::isalnum((unsigned char)text[i]) || text[i] == '_'))
        ++i;
      std::string_view word = text.substr(start, i - start);
      if (const auto* entry = map.by_original(word))
        out += entry->replacement;
      else
        out += word;
    } else {
      out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

std::string unrename_words(std::string_view text, const RenameMap& map) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = text[i];
    if (std::isalpha(c) || c == '_') {
      size_t start = i;
      while (i < text.size() &&
             (std::isalnum((unsigned char)text[i]) || text[i] == '_'))
        ++i;
      std::string_view word = text.substr(start, i - start);
      if (const auto* entry = map.by_replacement(word))
        out += entry->original;
      else
        out += word;
    } else {
      out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

std::vector<int> sample_suffixes(uint64_t seed, long long range, size_t n) {
  // Partial Fisher-Yates over [0, range); avoids materializing the range.
  std::mt19937_64 rng(seed);
  std::unordered_map<long long, long long> perm;
  std::vector<int> out;
  out.reserve(n);
  for (long long i = 0; i < (long long)n; ++i) {
    long long j = i + (long long)(rng() % (uint64_t)(range - i));
    long long vi = perm.count(i) ? perm[i] : i;
    long long vj = perm.count(j) ? perm[j] : j;
    perm[j] = vi;
    out.push_back((int)(vj + 1));
  }
  return out;
}

struct Edit {
  Span span;
  std::string text;
};

}  // namespace

std::vector<std::pair<std::string, Category>> declared_symbols(
    const SyntaxTree& unit_tree) {
  Collected decls;
  collect_declaration_names(unit_tree, decls);
  return decls.ordered;
}

AnonymizedUnit anonymize(const parse::FunctionUnit& unit, uint64_t seed,
                         const TokompilerConfig& config) {
  SyntaxTree tree = parse::parse_source(unit.source_text, unit.language);
  if (tree.error_count() != 0)
    throw std::invalid_argument("unit does not parse cleanly (" +
                                std::to_string(tree.error_count()) +
                                " errors)");

  // Step 1: declared symbols and literals in first-occurrence order.
  struct Item {
    uint32_t position;
    std::string text;
    Category category;
  };
  std::vector<Item> items;
  {
    Collected collected;
    collect_declaration_names(tree, collected);
    collect_literals(tree, collected);
    std::unordered_map<std::string, uint32_t> first_pos;
    tree.walk([&](const Node& node) {
      if (node.child_count() != 0 && !is_literal_kind(node.kind())) return true;
      std::string text(node.text());
      if (collected.seen.count(text) && !first_pos.count(text))
        first_pos[text] = node.span().begin;
      return true;
    });
    for (auto& [text, category] : collected.ordered)
      items.push_back(Item{first_pos.count(text) ? first_pos[text] : 0u, text,
                           category});
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      return a.position != b.position ? a.position < b.position
                                      : a.text < b.text;
    });
  }

  long long range = config.suffix_range_max;
  while ((long long)items.size() > range && config.auto_extend) range *= 10;
  if ((long long)items.size() > range)
    throw SuffixExhaustion("unit declares " + std::to_string(items.size()) +
                           " symbols but the suffix range holds only " +
                           std::to_string(range));

  RenameMap map;
  map.seed = seed;
  std::vector<int> suffixes = sample_suffixes(seed, range, items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    std::string replacement = std::string(category_prefix(items[i].category)) +
                              "_" + std::to_string(suffixes[i]);
    map.entries.push_back(
        RenameMap::Entry{items[i].text, std::move(replacement), items[i].category});
  }

  // Step 2: splice replacements into the source and re-parse.
  std::vector<Edit> edits;
  tree.walk([&](const Node& node) {
    std::string_view kind = node.kind();
    if (kind == "preproc_arg") {
      std::string renamed = rename_words(node.text(), map);
      if (renamed != node.text()) edits.push_back(Edit{node.span(), renamed});
      return false;
    }
    if (is_literal_kind(kind)) {
      if (inside_preproc(node)) return false;
      if (const auto* entry = map.by_original(node.text()))
        edits.push_back(Edit{node.span(), entry->replacement});
      return false;
    }
    if (node.child_count() == 0 && is_identifier_kind(kind)) {
      if (const auto* entry = map.by_original(node.text()))
        edits.push_back(Edit{node.span(), entry->replacement});
    }
    return true;
  });
  std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) {
    return a.span.begin < b.span.begin;
  });

  std::string replaced = unit.source_text;
  for (auto it = edits.rbegin(); it != edits.rend(); ++it)
    replaced.replace(it->span.begin, it->span.size(), it->text);

  SyntaxTree replaced_tree = parse::parse_source(replaced, unit.language);
  if (replaced_tree.error_count() != 0)
    throw ReparseFailure("rewritten unit no longer parses cleanly");

  // Step 3: regenerate from the tree; this drops comments and pins the
  // canonical whitespace style.
  AnonymizedUnit anon;
  anon.code = parse::print_canonical(replaced_tree);
  anon.map = std::move(map);
  anon.origin = unit;
  return anon;
}

std::string normalize(const parse::FunctionUnit& unit) {
  SyntaxTree tree = parse::parse_source(unit.source_text, unit.language);
  return parse::print_canonical(tree);
}

TokenStream lexicalize(const AnonymizedUnit& anon) {
  SyntaxTree tree = parse::parse_source(anon.code, anon.origin.language);
  TokenStream stream;
  for (auto& token : parse::code_tokens(tree)) {
    if (looks_like_replacement(token) && anon.map.by_replacement(token)) {
      size_t underscore = token.rfind('_');
      stream.tokens.push_back(token.substr(0, underscore));
      stream.tokens.push_back("_");
      stream.tokens.push_back(token.substr(underscore + 1));
    } else {
      stream.tokens.push_back(std::move(token));
    }
  }
  return stream;
}

std::string TokenStream::join() const {
  std::string out;
  static const std::unordered_set<std::string_view> kPrefixes = {
      "func", "var", "arr", "num", "str"};
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string piece = tokens[i];
    if (i + 2 < tokens.size() && kPrefixes.count(tokens[i]) &&
        tokens[i + 1] == "_" && !tokens[i + 2].empty() &&
        std::all_of(tokens[i + 2].begin(), tokens[i + 2].end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
      piece = tokens[i] + "_" + tokens[i + 2];
      i += 2;
    }
    if (!out.empty() && out.back() != '\n') out.push_back(' ');
    out += piece;
    if (piece.size() > 1 && piece[0] == '#') out.push_back('\n');
  }
  if (!out.empty() && out.back() != '\n') out.push_back('\n');
  return out;
}

std::string deanonymize(const AnonymizedUnit& anon) {
  SyntaxTree tree = parse::parse_source(anon.code, anon.origin.language);
  parse::LeafTransform restore = [&](const Node& node,
                                     std::string_view token) -> std::string {
    if (node.kind() == "preproc_arg" || node.kind().starts_with("preproc_"))
      return unrename_words(token, anon.map);
    if (const auto* entry = anon.map.by_replacement(token))
      return entry->original;
    if (is_identifier_kind(node.kind()) && looks_like_replacement(token))
      throw UnknownReplacement("no map entry for '" + std::string(token) + "'");
    return std::string(token);
  };
  return parse::print_canonical(tree, restore);
}

}  // namespace hpcode::tokompiler
