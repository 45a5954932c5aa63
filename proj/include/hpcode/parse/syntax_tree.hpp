#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hpcode::parse {

enum class Language { C, Cpp };

std::string_view language_name(Language lang);

// Thrown when input bytes cannot be decoded as source text (embedded NUL
// bytes; everything else falls back to Latin-1 and keeps byte offsets).
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Span {
  uint32_t begin = 0;
  uint32_t end = 0;

  uint32_t size() const { return end - begin; }
  bool contains(const Span& other) const {
    return begin <= other.begin && other.end <= end;
  }
  bool operator==(const Span&) const = default;
};

class SyntaxTree;

// Lightweight handle into a SyntaxTree.  Valid only while the owning tree
// is alive; trees are immutable after construction.
class Node {
 public:
  std::string_view kind() const;
  Span span() const;
  std::string_view text() const;

  bool is_named() const;
  bool is_error() const;
  bool is_missing() const;

  uint32_t child_count() const;
  uint32_t named_child_count() const;
  Node child(uint32_t index) const;
  Node named_child(uint32_t index) const;
  std::optional<Node> child_by_field(std::string_view field) const;
  std::optional<Node> parent() const;
  std::optional<Node> next_sibling() const;

  std::vector<Node> children() const;

  bool operator==(const Node& other) const;

 private:
  friend class SyntaxTree;
  Node(const void* ts_node_bytes, const SyntaxTree* owner);

  // Storage for a TSNode without leaking the C API into this header.
  alignas(8) unsigned char node_[32];
  const SyntaxTree* owner_ = nullptr;
};

class SyntaxTree {
 public:
  Node root() const;
  Language language() const;
  const std::string& text() const;
  std::string_view text(Span span) const;
  int error_count() const;

  // Depth-first, byte order.  Includes unnamed nodes.
  template <typename Fn>
  void walk(Fn&& fn) const {
    walk_impl(root(), fn);
  }

 private:
  friend class Node;
  friend SyntaxTree parse_source(std::string_view, Language);

  template <typename Fn>
  static void walk_impl(const Node& node, Fn& fn) {
    if (!fn(node)) return;  // fn returns false to skip the subtree
    for (uint32_t i = 0; i < node.child_count(); ++i)
      walk_impl(node.child(i), fn);
  }

  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Parses source bytes with the grammar for `lang`.  Malformed code never
// throws; it shows up as ERROR/MISSING nodes counted by error_count().
SyntaxTree parse_source(std::string_view text, Language lang);

}  // namespace hpcode::parse
