#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hpcode/parse/syntax_tree.hpp"

namespace hpcode::parse {

// Maps a leaf node's text to the text to print in its place.
using LeafTransform =
    std::function<std::string(const Node&, std::string_view token)>;

// Regenerates source from the tree in a fixed canonical style: single
// spaces between tokens, a newline after `{`, `}` and `;` (except inside
// for-loop headers), comments dropped, string/char literals verbatim,
// preprocessor lines kept on their own lines.  Output is byte-reproducible
// for a given tree.
std::string print_canonical(const SyntaxTree& tree,
                            const LeafTransform& transform = nullptr);

struct TokenOptions {
  bool split_preproc = false;  // break directive lines into word/punct tokens
};

// The lexical token sequence of the tree: every leaf in byte order,
// comments skipped, string/char literals as single tokens, preprocessor
// lines as single tokens unless split_preproc is set.
std::vector<std::string> code_tokens(const SyntaxTree& tree,
                                     const TokenOptions& options = {});

}  // namespace hpcode::parse
