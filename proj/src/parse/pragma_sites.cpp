#include "hpcode/parse/pragma_sites.hpp"

#include <algorithm>
#include <cctype>

namespace hpcode::parse {

namespace {

// Matches preproc_call nodes whose argument starts with "omp".
bool is_omp_pragma_node(const Node& node, std::string* pragma_text) {
  if (node.kind() != "preproc_call") return false;
  auto directive = node.child_by_field("directive");
  if (!directive || directive->text() != "#pragma") return false;
  auto arg = node.child_by_field("argument");
  if (!arg) return false;
  std::string_view text = arg->text();
  while (!text.empty() && std::isspace((unsigned char)text.front()))
    text.remove_prefix(1);
  if (!(text.starts_with("omp") &&
        (text.size() == 3 || std::isspace((unsigned char)text[3]))))
    return false;
  if (pragma_text) *pragma_text = "#pragma " + std::string(arg->text());
  return true;
}

bool is_for_kind(std::string_view kind) {
  return kind == "for_statement" || kind == "for_range_loop";
}

// Unwraps attributed_statement / labeled_statement down to a for loop.
std::optional<Node> as_for_loop(const Node& node) {
  if (is_for_kind(node.kind())) return node;
  if (node.kind() == "attributed_statement" ||
      node.kind() == "labeled_statement") {
    for (uint32_t i = 0; i < node.named_child_count(); ++i)
      if (auto inner = as_for_loop(node.named_child(i))) return inner;
  }
  return std::nullopt;
}

}  // namespace

PragmaScan find_pragma_sites(const SyntaxTree& tree, uint64_t file_id) {
  PragmaScan scan;
  tree.walk([&](const Node& node) {
    std::string pragma_text;
    if (!is_omp_pragma_node(node, &pragma_text)) return true;

    OmpPragma pragma;
    try {
      pragma = parse_omp_pragma(pragma_text);
    } catch (const MalformedClause&) {
      return false;  // unreadable pragma; neither site nor orphan
    } catch (const NotAPragma&) {
      return false;
    }

    PragmaSite site{file_id, std::move(pragma), Span{}, node.span()};
    std::optional<Node> next = node.next_sibling();
    while (next) {
      if (next->kind() == "comment" || is_omp_pragma_node(*next, nullptr)) {
        next = next->next_sibling();
        continue;
      }
      break;
    }
    if (next) {
      if (auto loop = as_for_loop(*next)) {
        site.loop_span = loop->span();
        scan.sites.push_back(std::move(site));
        return false;
      }
    }
    scan.orphans.push_back(std::move(site));
    return false;
  });
  return scan;
}

std::pair<std::string, std::vector<PragmaSite>> strip_pragmas(
    std::string_view text, Language language, int max_errors,
    uint64_t file_id) {
  SyntaxTree tree = parse_source(text, language);
  if (tree.error_count() > max_errors)
    throw ParseFailure("input has " + std::to_string(tree.error_count()) +
                       " parse errors (limit " + std::to_string(max_errors) +
                       ")");

  PragmaScan scan = find_pragma_sites(tree, file_id);
  std::vector<PragmaSite> removed;
  removed.reserve(scan.sites.size() + scan.orphans.size());
  for (auto& s : scan.sites) removed.push_back(std::move(s));
  for (auto& s : scan.orphans) removed.push_back(std::move(s));
  std::sort(removed.begin(), removed.end(),
            [](const PragmaSite& a, const PragmaSite& b) {
              return a.pragma_span.begin < b.pragma_span.begin;
            });

  std::string serial(text);
  for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
    Span span = it->pragma_span;
    // Take the whole line: leading indentation and, when the node text
    // does not already cover it, the trailing newline.
    size_t begin = span.begin;
    while (begin > 0 && (serial[begin - 1] == ' ' || serial[begin - 1] == '\t'))
      --begin;
    size_t end = span.end;
    if (end > 0 && serial[end - 1] != '\n' && end < serial.size() &&
        serial[end] == '\n')
      ++end;
    serial.erase(begin, end - begin);
  }
  return {std::move(serial), std::move(removed)};
}

}  // namespace hpcode::parse
