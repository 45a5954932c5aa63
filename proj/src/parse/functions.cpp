#include "hpcode/parse/functions.hpp"

namespace hpcode::parse {

namespace {

bool is_declarator_wrapper(std::string_view kind) {
  return kind == "pointer_declarator" || kind == "reference_declarator" ||
         kind == "array_declarator" || kind == "function_declarator" ||
         kind == "parenthesized_declarator" || kind == "init_declarator" ||
         kind == "attributed_declarator";
}

bool is_name_kind(std::string_view kind) {
  return kind == "identifier" || kind == "field_identifier" ||
         kind == "type_identifier" || kind == "qualified_identifier" ||
         kind == "operator_name" || kind == "destructor_name";
}

}  // namespace

std::string declarator_name(const Node& declarator) {
  Node cur = declarator;
  for (;;) {
    if (is_name_kind(cur.kind())) return std::string(cur.text());
    if (is_declarator_wrapper(cur.kind())) {
      if (auto inner = cur.child_by_field("declarator")) {
        cur = *inner;
        continue;
      }
      // parenthesized_declarator has no field; descend into the first
      // named child instead.
      if (cur.named_child_count() > 0) {
        cur = cur.named_child(0);
        continue;
      }
    }
    return {};
  }
}

std::vector<FunctionUnit> extract_functions(const SyntaxTree& tree,
                                            uint64_t file_id) {
  std::vector<FunctionUnit> out;
  tree.walk([&](const Node& node) {
    if (node.kind() != "function_definition") return true;
    auto body = node.child_by_field("body");
    if (!body || body->kind() != "compound_statement") return true;

    Span span = node.span();
    // Templated functions carry their template header so the unit stays a
    // self-contained definition.
    if (auto parent = node.parent();
        parent && parent->kind() == "template_declaration")
      span = parent->span();

    std::string name;
    if (auto declarator = node.child_by_field("declarator"))
      name = declarator_name(*declarator);

    out.push_back(FunctionUnit{std::string(tree.text(span)), tree.language(),
                               file_id, span, std::move(name)});
    return false;  // a unit's body is already covered; don't nest units
  });
  return out;
}

}  // namespace hpcode::parse
