#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hpcode/parse/syntax_tree.hpp"

namespace hpcode::parse {

// One extracted function definition.  source_text is the exact byte slice
// of the origin file (template header included for templated functions).
struct FunctionUnit {
  std::string source_text;
  Language language = Language::C;
  uint64_t file_id = 0;
  Span byte_span;
  std::string name;
};

// Returns one unit per function-definition node with a body, in byte
// order.  Prototypes have no body and are skipped.
std::vector<FunctionUnit> extract_functions(const SyntaxTree& tree,
                                            uint64_t file_id);

// Resolves the declared name inside a declarator chain (pointer, array,
// reference, function declarators).  Empty when there is none.
std::string declarator_name(const Node& declarator);

}  // namespace hpcode::parse
