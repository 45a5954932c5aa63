#include "hpcode/parse/syntax_tree.hpp"

#include <tree_sitter/api.h>

#include <cstring>

extern "C" {
const TSLanguage* tree_sitter_c(void);
const TSLanguage* tree_sitter_cpp(void);
}

namespace hpcode::parse {

static_assert(sizeof(TSNode) == 32, "Node storage must fit a TSNode");

std::string_view language_name(Language lang) {
  return lang == Language::C ? "c" : "cpp";
}

struct SyntaxTree::Impl {
  std::string text;
  TSTree* tree = nullptr;
  Language language = Language::C;
  int error_count = 0;

  ~Impl() {
    if (tree) ts_tree_delete(tree);
  }
};

namespace {

TSNode unwrap(const unsigned char* bytes) {
  TSNode n;
  std::memcpy(&n, bytes, sizeof(TSNode));
  return n;
}

int count_errors(TSNode node) {
  if (!ts_node_has_error(node) && !ts_node_is_missing(node)) return 0;
  int count = (ts_node_is_error(node) || ts_node_is_missing(node)) ? 1 : 0;
  uint32_t n = ts_node_child_count(node);
  for (uint32_t i = 0; i < n; ++i) count += count_errors(ts_node_child(node, i));
  return count;
}

}  // namespace

Node::Node(const void* ts_node_bytes, const SyntaxTree* owner) : owner_(owner) {
  std::memcpy(node_, ts_node_bytes, sizeof(TSNode));
}

std::string_view Node::kind() const { return ts_node_type(unwrap(node_)); }

Span Node::span() const {
  TSNode n = unwrap(node_);
  return {ts_node_start_byte(n), ts_node_end_byte(n)};
}

std::string_view Node::text() const { return owner_->text(span()); }

bool Node::is_named() const { return ts_node_is_named(unwrap(node_)); }
bool Node::is_error() const { return ts_node_is_error(unwrap(node_)); }
bool Node::is_missing() const { return ts_node_is_missing(unwrap(node_)); }

uint32_t Node::child_count() const { return ts_node_child_count(unwrap(node_)); }
uint32_t Node::named_child_count() const {
  return ts_node_named_child_count(unwrap(node_));
}

Node Node::child(uint32_t index) const {
  TSNode c = ts_node_child(unwrap(node_), index);
  return Node(&c, owner_);
}

Node Node::named_child(uint32_t index) const {
  TSNode c = ts_node_named_child(unwrap(node_), index);
  return Node(&c, owner_);
}

std::optional<Node> Node::child_by_field(std::string_view field) const {
  TSNode c = ts_node_child_by_field_name(unwrap(node_), field.data(),
                                         (uint32_t)field.size());
  if (ts_node_is_null(c)) return std::nullopt;
  return Node(&c, owner_);
}

std::optional<Node> Node::parent() const {
  TSNode p = ts_node_parent(unwrap(node_));
  if (ts_node_is_null(p)) return std::nullopt;
  return Node(&p, owner_);
}

std::optional<Node> Node::next_sibling() const {
  TSNode s = ts_node_next_sibling(unwrap(node_));
  if (ts_node_is_null(s)) return std::nullopt;
  return Node(&s, owner_);
}

std::vector<Node> Node::children() const {
  std::vector<Node> out;
  uint32_t n = child_count();
  out.reserve(n);
  for (uint32_t i = 0; i < n; ++i) out.push_back(child(i));
  return out;
}

bool Node::operator==(const Node& other) const {
  return ts_node_eq(unwrap(node_), unwrap(other.node_));
}

Node SyntaxTree::root() const {
  TSNode r = ts_tree_root_node(impl_->tree);
  return Node(&r, this);
}

Language SyntaxTree::language() const { return impl_->language; }
const std::string& SyntaxTree::text() const { return impl_->text; }

std::string_view SyntaxTree::text(Span span) const {
  return std::string_view(impl_->text).substr(span.begin, span.size());
}

int SyntaxTree::error_count() const { return impl_->error_count; }

SyntaxTree parse_source(std::string_view text, Language lang) {
  // Any NUL byte means we are looking at binary content, not source; all
  // other byte sequences are kept verbatim (Latin-1 fallback) so spans
  // always index the original bytes.
  if (text.find('\0') != std::string_view::npos)
    throw DecodeError("input contains NUL bytes");

  auto impl = std::make_shared<SyntaxTree::Impl>();
  impl->text.assign(text);
  impl->language = lang;

  TSParser* parser = ts_parser_new();
  ts_parser_set_language(parser,
                         lang == Language::C ? tree_sitter_c() : tree_sitter_cpp());
  impl->tree = ts_parser_parse_string(parser, nullptr, impl->text.data(),
                                      (uint32_t)impl->text.size());
  ts_parser_delete(parser);
  impl->error_count = count_errors(ts_tree_root_node(impl->tree));

  SyntaxTree tree;
  tree.impl_ = std::move(impl);
  return tree;
}

}  // namespace hpcode::parse
