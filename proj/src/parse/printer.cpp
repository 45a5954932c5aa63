#include "hpcode/parse/printer.hpp"

#include <cctype>

namespace hpcode::parse {

namespace {

// Nodes printed verbatim as one token.  Descending into them would let
// the single-space join corrupt their interior.
bool is_atomic_kind(std::string_view kind) {
  return kind == "string_literal" || kind == "char_literal" ||
         kind == "raw_string_literal" || kind == "system_lib_string" ||
         kind == "preproc_arg";
}

// Single-line preprocessor directives; emitted verbatim followed by a
// newline.  Conditional blocks (#if...#endif) are containers and are
// walked structurally instead.
bool is_preproc_line(std::string_view kind) {
  return kind == "preproc_call" || kind == "preproc_include" ||
         kind == "preproc_def" || kind == "preproc_function_def";
}

std::string_view rstrip_newlines(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.remove_suffix(1);
  return text;
}

struct Walker {
  const SyntaxTree& tree;
  const LeafTransform* transform;
  std::vector<uint32_t> for_header_ends;

  // Sink receives (node, token_text, wants_newline_after).
  std::function<void(const Node&, std::string_view, bool)> sink;

  bool in_for_header(uint32_t pos) const {
    for (auto end : for_header_ends)
      if (pos < end) return true;
    return false;
  }

  void emit(const Node& node, std::string_view token, bool newline_after) {
    if (transform && *transform) {
      std::string replaced = (*transform)(node, token);
      sink(node, replaced, newline_after);
    } else {
      sink(node, token, newline_after);
    }
  }

  void visit(const Node& node) {
    std::string_view kind = node.kind();
    if (kind == "comment") return;
    if (is_preproc_line(kind)) {
      emit(node, rstrip_newlines(node.text()), true);
      return;
    }
    if (is_atomic_kind(kind)) {
      emit(node, node.text(), false);
      return;
    }
    if (node.child_count() == 0) {
      std::string_view text = node.text();
      if (text == "\n") return;  // line terminators inside preproc blocks
      if (text.empty()) return;  // missing nodes
      bool newline = text == "{" || text == "}" || text == "#endif" ||
                     text == "#else";
      if (text == ";" && !in_for_header(node.span().begin)) newline = true;
      // #ifdef/#ifndef headers end at their name identifier.
      if (auto parent = node.parent();
          parent && (parent->kind() == "preproc_ifdef" ||
                     parent->kind() == "preproc_elifdef")) {
        auto name = parent->child_by_field("name");
        if (name && *name == node) newline = true;
      }
      emit(node, text, newline);
      return;
    }

    bool is_for = kind == "for_statement" || kind == "for_range_loop";
    if (is_for) {
      uint32_t header_end = node.span().end;
      for (const Node& child : node.children())
        if (child.kind() == ")") header_end = child.span().end;
      for_header_ends.push_back(header_end);
    }
    for (const Node& child : node.children()) visit(child);
    if (is_for) for_header_ends.pop_back();
  }
};

}  // namespace

std::string print_canonical(const SyntaxTree& tree,
                            const LeafTransform& transform) {
  std::string out;
  Walker walker{tree, &transform, {}, nullptr};
  walker.sink = [&out](const Node&, std::string_view token, bool newline) {
    if (token.empty()) return;
    if (!out.empty() && out.back() != '\n') out.push_back(' ');
    out.append(token);
    if (newline) out.push_back('\n');
  };
  walker.visit(tree.root());
  if (!out.empty() && out.back() != '\n') out.push_back('\n');
  return out;
}

namespace {

// Splits preprocessor line text into word / number / punctuation tokens.
void split_directive(std::string_view text, std::vector<std::string>& out) {
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = text[i];
    if (std::isspace(c) || c == '\\') {
      ++i;
      continue;
    }
    size_t start = i;
    if (std::isalpha(c) || c == '_') {
      while (i < text.size() &&
             (std::isalnum((unsigned char)text[i]) || text[i] == '_'))
        ++i;
    } else if (std::isdigit(c)) {
      while (i < text.size() &&
             (std::isalnum((unsigned char)text[i]) || text[i] == '.'))
        ++i;
    } else {
      ++i;
    }
    out.emplace_back(text.substr(start, i - start));
  }
}

}  // namespace

std::vector<std::string> code_tokens(const SyntaxTree& tree,
                                     const TokenOptions& options) {
  std::vector<std::string> tokens;
  Walker walker{tree, nullptr, {}, nullptr};
  walker.sink = [&](const Node& node, std::string_view token, bool) {
    if (token.empty()) return;
    if (options.split_preproc && is_preproc_line(node.kind()))
      split_directive(token, tokens);
    else
      tokens.emplace_back(token);
  };
  walker.visit(tree.root());
  return tokens;
}

}  // namespace hpcode::parse
