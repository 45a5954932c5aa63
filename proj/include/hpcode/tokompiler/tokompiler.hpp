#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hpcode/parse/functions.hpp"
#include "hpcode/parse/syntax_tree.hpp"

namespace hpcode::tokompiler {

class ReparseFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SuffixExhaustion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownReplacement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Category { Func, Var, Arr, Num, Str };

std::string_view category_prefix(Category c);  // "func", "var", ...

struct TokompilerConfig {
  int suffix_range_max = 1000;
  bool auto_extend = true;  // grow the range x10 when symbols outnumber it
};

// Bijection between original symbols/literals and their replacement
// tokens.  Entries are ordered by first occurrence in the unit; suffixes
// are sampled without replacement so the map is injective by construction.
struct RenameMap {
  struct Entry {
    std::string original;
    std::string replacement;
    Category category;
  };
  std::vector<Entry> entries;
  uint64_t seed = 0;

  const Entry* by_original(std::string_view symbol) const;
  const Entry* by_replacement(std::string_view token) const;
};

struct AnonymizedUnit {
  std::string code;
  RenameMap map;
  parse::FunctionUnit origin;
};

struct TokenStream {
  std::vector<std::string> tokens;

  // Inverse of the lexicalize split: rejoins [category, "_", digits]
  // triples and space-joins the rest (preprocessor lines get their own
  // line).  join() of a lexicalized unit re-parses to a tree isomorphic
  // to the unit's own tree.
  std::string join() const;
};

// Rewrites the unit into its semantics-free form: declared identifiers
// and literals replaced by category tokens with seeded random suffixes,
// comments dropped, output regenerated from the re-parsed tree in
// canonical style.  Identifiers the unit does not declare (library calls,
// external types) are preserved so the result stays compilable.
AnonymizedUnit anonymize(const parse::FunctionUnit& unit, uint64_t seed,
                         const TokompilerConfig& config = {});

TokenStream lexicalize(const AnonymizedUnit& anon);

// Inverse substitution; token-equal to normalize() of the origin.
std::string deanonymize(const AnonymizedUnit& anon);

// Comment-stripped, whitespace-normalized regeneration of the unit.
std::string normalize(const parse::FunctionUnit& unit);

// True when the token spells a replacement: (func|var|arr|num|str)_<digits>.
bool looks_like_replacement(std::string_view token);

// Per-unit seed for reproducible parallel runs over a corpus.
uint64_t derive_seed(uint64_t global_seed, uint64_t file_id, parse::Span span);

// The declared symbols of a unit (functions, parameters, locals, local
// types) with their categories, ordered by first occurrence.
std::vector<std::pair<std::string, Category>> declared_symbols(
    const parse::SyntaxTree& unit_tree);

}  // namespace hpcode::tokompiler
