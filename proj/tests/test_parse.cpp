#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <random>
#include <set>
#include <thread>

#include "hpcode/corpus/corpus.hpp"
#include "hpcode/parse/functions.hpp"
#include "hpcode/parse/omp_pragma.hpp"
#include "hpcode/parse/pragma_sites.hpp"
#include "hpcode/parse/printer.hpp"
#include "support/fixtures.hpp"

using namespace hpcode;
using parse::Language;

TEST_CASE("parse_source: minimal program is clean") {
  auto tree = parse::parse_source("int main(){return 0;}", Language::C);
  CHECK(tree.error_count() == 0);
}

TEST_CASE("parse_source: unbalanced brace yields error nodes, not a throw") {
  auto tree = parse::parse_source("int main(){", Language::C);
  CHECK(tree.error_count() >= 1);
}

TEST_CASE("parse_source: pi-array snippet exposes the expected leaves") {
  auto tree = parse::parse_source("int main() { int r[2800 + 1]; }", Language::C);
  REQUIRE(tree.error_count() == 0);
  std::set<std::string> leaves;
  tree.walk([&](const parse::Node& node) {
    if (node.child_count() == 0) leaves.insert(std::string(node.text()));
    return true;
  });
  CHECK(leaves.count("r"));
  CHECK(leaves.count("2800"));
  CHECK(leaves.count("1"));
}

TEST_CASE("parse_source: NUL bytes are a DecodeError") {
  std::string bad("int x\0= 1;", 10);
  CHECK_THROWS_AS(parse::parse_source(bad, Language::C), parse::DecodeError);
}

TEST_CASE("parse_source: non-UTF8 bytes survive with byte-accurate spans") {
  std::string latin = "int zaehler_\xe4 = 1; /* gr\xfc\xdf */ int f(void){return zaehler_\xe4;}";
  auto tree = parse::parse_source(latin, Language::C);
  CHECK(tree.text() == latin);
}

TEST_CASE("extract_functions: prototypes are skipped") {
  const char* src =
      "int a(void){return 1;}\n"
      "int proto(int);\n"
      "int b(int x){return x;}\n";
  auto tree = parse::parse_source(src, Language::C);
  auto units = parse::extract_functions(tree, 1);
  REQUIRE(units.size() == 2);
  CHECK(units[0].name == "a");
  CHECK(units[1].name == "b");
}

TEST_CASE("extract_functions: empty file") {
  auto tree = parse::parse_source("", Language::C);
  CHECK(parse::extract_functions(tree, 1).empty());
}

TEST_CASE("extract_functions: spans are disjoint and ordered") {
  auto text = testing::read_file(testing::fixture_dir() / "corpus/kernels.c");
  auto tree = parse::parse_source(text, Language::C);
  auto units = parse::extract_functions(tree, 2);
  REQUIRE(units.size() == 3);
  for (size_t i = 1; i < units.size(); ++i)
    CHECK(units[i - 1].byte_span.end <= units[i].byte_span.begin);
  for (const auto& unit : units) {
    CHECK(unit.byte_span.end <= text.size());
    auto reparsed = parse::parse_source(unit.source_text, Language::C);
    CHECK(reparsed.error_count() == 0);
  }
}

TEST_CASE("extract_functions: count ignores whitespace between functions") {
  const char* compact = "int a(void){return 1;}\nint b(void){return 2;}\n";
  const char* spaced = "int a(void){return 1;}\n\n\n   \nint b(void){return 2;}\n";
  auto count = [](const char* src) {
    auto tree = parse::parse_source(src, Language::C);
    return parse::extract_functions(tree, 0).size();
  };
  CHECK(count(compact) == count(spaced));
}

TEST_CASE("extract_functions: templated and member functions") {
  auto text = testing::read_file(testing::fixture_dir() / "corpus/templates.cpp");
  auto tree = parse::parse_source(text, Language::Cpp);
  auto units = parse::extract_functions(tree, 3);
  std::set<std::string> names;
  for (const auto& unit : units) names.insert(unit.name);
  CHECK(names.count("accumulate_all"));
  CHECK(names.count("push"));
  CHECK(names.count("mean"));
  // the template unit carries its template header
  for (const auto& unit : units)
    if (unit.name == "accumulate_all")
      CHECK(unit.source_text.starts_with("template"));
}

TEST_CASE("parse_omp_pragma: private + reduction") {
  auto pragma =
      parse::parse_omp_pragma("#pragma omp parallel for private(i,j) reduction(+:sum)");
  CHECK(pragma.directive == parse::Directive::ParallelFor);
  REQUIRE(pragma.clauses.size() == 2);
  auto* priv = std::get_if<parse::clause::Private>(&pragma.clauses[0]);
  REQUIRE(priv);
  CHECK(priv->vars == std::vector<std::string>{"i", "j"});
  auto* red = std::get_if<parse::clause::Reduction>(&pragma.clauses[1]);
  REQUIRE(red);
  CHECK(red->op == "+");
  CHECK(red->vars == std::vector<std::string>{"sum"});
}

TEST_CASE("parse_omp_pragma: target form with simd suffix") {
  auto pragma = parse::parse_omp_pragma(
      "#pragma omp target teams distribute parallel for simd");
  CHECK(pragma.directive == parse::Directive::TargetTeamsDistributeParallelFor);
  REQUIRE(pragma.clauses.size() == 1);
  CHECK(std::holds_alternative<parse::clause::Simd>(pragma.clauses[0]));
}

TEST_CASE("parse_omp_pragma: unknown clause passes through") {
  auto pragma = parse::parse_omp_pragma("#pragma omp parallel for collapse(2)");
  CHECK(pragma.directive == parse::Directive::ParallelFor);
  REQUIRE(pragma.clauses.size() == 1);
  auto* other = std::get_if<parse::clause::Other>(&pragma.clauses[0]);
  REQUIRE(other);
  CHECK(other->raw == "collapse(2)");
}

TEST_CASE("parse_omp_pragma: errors") {
  CHECK_THROWS_AS(parse::parse_omp_pragma("#pragma once"), parse::NotAPragma);
  CHECK_THROWS_AS(parse::parse_omp_pragma("int x = 1;"), parse::NotAPragma);
  CHECK_THROWS_AS(parse::parse_omp_pragma("#pragma omp parallel for private(i"),
                  parse::MalformedClause);
  CHECK_THROWS_AS(parse::parse_omp_pragma("#pragma omp parallel for private()"),
                  parse::MalformedClause);
}

TEST_CASE("parse_omp_pragma: continuation lines are joined") {
  auto pragma = parse::parse_omp_pragma(
      "#pragma omp parallel for private (i,j) \\\n    reduction (+:x)");
  CHECK(pragma.directive == parse::Directive::ParallelFor);
  CHECK(pragma.clauses.size() == 2);
}

namespace {

// Hand-rolled generator over the clause grammar for the round-trip
// property.
parse::OmpPragma random_pragma(std::mt19937_64& rng) {
  auto pick = [&](auto&&... options) {
    const char* items[] = {options...};
    return std::string(items[rng() % (sizeof...(options))]);
  };
  parse::OmpPragma pragma;
  switch (rng() % 4) {
    case 0: pragma.directive_words = {"parallel"}; break;
    case 1: pragma.directive_words = {"parallel", "for"}; break;
    case 2: pragma.directive_words = {"for"}; break;
    default:
      pragma.directive_words = {"target", "teams", "distribute", "parallel",
                                "for"};
      break;
  }
  auto vars = [&] {
    std::vector<std::string> out;
    size_t n = 1 + rng() % 3;
    for (size_t i = 0; i < n; ++i)
      out.push_back(pick("i", "j", "k", "sum", "acc", "tmp") +
                    std::to_string(rng() % 4));
    return out;
  };
  size_t n_clauses = rng() % 4;
  for (size_t i = 0; i < n_clauses; ++i) {
    switch (rng() % 6) {
      case 0: pragma.clauses.push_back(parse::clause::Private{vars()}); break;
      case 1: pragma.clauses.push_back(parse::clause::FirstPrivate{vars()}); break;
      case 2: pragma.clauses.push_back(parse::clause::LastPrivate{vars()}); break;
      case 3:
        pragma.clauses.push_back(
            parse::clause::Reduction{pick("+", "-", "*", "max", "min", "&&"),
                                     vars()});
        break;
      case 4: pragma.clauses.push_back(parse::clause::Simd{}); break;
      default:
        pragma.clauses.push_back(parse::clause::Schedule{
            pick("static", "dynamic", "guided"),
            rng() % 2 ? std::optional<std::string>(std::to_string(1 + rng() % 64))
                      : std::nullopt});
        break;
    }
  }
  // classify via a render/parse pass so the enum matches the words
  return parse::parse_omp_pragma(parse::render(pragma));
}

}  // namespace

TEST_CASE("parse_omp_pragma: render round-trip property") {
  std::mt19937_64 rng(0xC0FFEE);
  for (int i = 0; i < 500; ++i) {
    parse::OmpPragma pragma = random_pragma(rng);
    parse::OmpPragma reparsed = parse::parse_omp_pragma(parse::render(pragma));
    CHECK(reparsed == pragma);
  }
}

TEST_CASE("find_pragma_sites: annotated loops only") {
  const char* src =
      "void f(int *a, int n) {\n"
      "  #pragma omp parallel for\n"
      "  for (int i = 0; i < n; i++) a[i] = i;\n"
      "  for (int i = 0; i < n; i++) a[i] += 1;\n"
      "  #pragma omp parallel for\n"
      "  for (int i = 0; i < n; i++) a[i] *= 2;\n"
      "  for (int i = 0; i < n; i++) a[i] -= 3;\n"
      "  #pragma omp parallel for\n"
      "  for (int i = 0; i < n; i++) a[i] ^= 5;\n"
      "}\n";
  auto tree = parse::parse_source(src, Language::C);
  auto scan = parse::find_pragma_sites(tree, 9);
  CHECK(scan.sites.size() == 3);
  CHECK(scan.orphans.empty());
  for (const auto& site : scan.sites) {
    CHECK(site.file_id == 9);
    CHECK(site.pragma_span.end <= site.loop_span.begin);
  }
}

TEST_CASE("find_pragma_sites: pragma before while is an orphan") {
  const char* src =
      "void f(int n) {\n"
      "  #pragma omp parallel for\n"
      "  while (n > 0) n--;\n"
      "}\n";
  auto tree = parse::parse_source(src, Language::C);
  auto scan = parse::find_pragma_sites(tree);
  CHECK(scan.sites.empty());
  CHECK(scan.orphans.size() == 1);
}

TEST_CASE("find_pragma_sites: nested annotated loops give nested spans") {
  const char* src =
      "void f(int *a, int n) {\n"
      "#pragma omp parallel for\n"
      "  for (int i = 0; i < n; i++) {\n"
      "#pragma omp parallel for\n"
      "    for (int j = 0; j < n; j++) {\n"
      "      a[i * n + j] = i + j;\n"
      "    }\n"
      "  }\n"
      "}\n";
  auto tree = parse::parse_source(src, Language::C);
  auto scan = parse::find_pragma_sites(tree);
  REQUIRE(scan.sites.size() == 2);
  CHECK(scan.sites[0].loop_span.contains(scan.sites[1].loop_span));
}

TEST_CASE("find_pragma_sites: stacked parallel + for pragmas are two sites") {
  const char* src =
      "void f(int *a, int n) {\n"
      "#pragma omp parallel\n"
      "#pragma omp for\n"
      "  for (int i = 0; i < n; i++) a[i] = i;\n"
      "}\n";
  auto tree = parse::parse_source(src, Language::C);
  auto scan = parse::find_pragma_sites(tree);
  REQUIRE(scan.sites.size() == 2);
  CHECK(scan.sites[0].loop_span == scan.sites[1].loop_span);
}

TEST_CASE("strip_pragmas: removes exactly the pragma line") {
  std::string with_pragma =
      "int main() {\n"
      "  double pi = 0.0;\n"
      "#pragma omp parallel for reduction(+:pi)\n"
      "  for (int i = 0; i < 100; i++) pi += 1.0 / (i + 1);\n"
      "  return pi > 0 ? 0 : 1;\n"
      "}\n";
  std::string without =
      "int main() {\n"
      "  double pi = 0.0;\n"
      "  for (int i = 0; i < 100; i++) pi += 1.0 / (i + 1);\n"
      "  return pi > 0 ? 0 : 1;\n"
      "}\n";
  auto [serial, removed] = parse::strip_pragmas(with_pragma, Language::C);
  CHECK(serial == without);
  REQUIRE(removed.size() == 1);
  CHECK(removed[0].pragma.directive == parse::Directive::ParallelFor);
}

TEST_CASE("strip_pragmas: identity on pragma-free input") {
  std::string src = "int f(void) { return 42; }\n";
  auto [serial, removed] = parse::strip_pragmas(src, Language::C);
  CHECK(serial == src);
  CHECK(removed.empty());
}

TEST_CASE("strip_pragmas: multi-line continuation removed whole") {
  std::string src =
      "void f(int *a, int n) {\n"
      "  int i; double x = 0;\n"
      "  #pragma omp parallel for private (i) \\\n"
      "      reduction (+:x)\n"
      "  for (i = 0; i < n; i++) x += a[i];\n"
      "}\n";
  auto [serial, removed] = parse::strip_pragmas(src, Language::C);
  CHECK(serial.find("#pragma") == std::string::npos);
  CHECK(serial.find("reduction") == std::string::npos);
  REQUIRE(removed.size() == 1);
  auto reparsed = parse::parse_source(serial, Language::C);
  CHECK(reparsed.error_count() == 0);
}

TEST_CASE("strip_pragmas: error budget") {
  CHECK_THROWS_AS(parse::strip_pragmas("int f( {", Language::C),
                  parse::ParseFailure);
}

TEST_CASE("property: strip output never contains '#pragma omp'") {
  auto files = corpus::ingest({testing::fixture_dir() / "corpus"});
  int checked = 0;
  for (const auto& file : files) {
    if (!file.language) continue;
    auto [serial, removed] =
        parse::strip_pragmas(file.bytes, *file.language, 0, file.file_id());
    CHECK(serial.find("#pragma omp") == std::string::npos);
    ++checked;
  }
  CHECK(checked >= 5);
}

TEST_CASE("property: span containment and exact byte reconstruction") {
  auto files = corpus::ingest({testing::fixture_dir() / "corpus"});
  REQUIRE(!files.empty());
  for (const auto& file : files) {
    if (!file.language) continue;
    auto tree = parse::parse_source(file.bytes, *file.language);

    // children stay inside the parent and never overlap
    tree.walk([&](const parse::Node& node) {
      parse::Span parent = node.span();
      uint32_t cursor = parent.begin;
      for (uint32_t i = 0; i < node.child_count(); ++i) {
        parse::Span child = node.child(i).span();
        CHECK(parent.contains(child));
        CHECK(child.begin >= cursor);
        cursor = child.end;
      }
      return true;
    });

    // leaf concatenation plus the gaps reproduces the file
    std::string rebuilt;
    uint32_t cursor = 0;
    tree.walk([&](const parse::Node& node) {
      if (node.child_count() != 0) return true;
      parse::Span span = node.span();
      rebuilt += file.bytes.substr(cursor, span.begin - cursor);
      rebuilt += std::string(node.text());
      cursor = span.end;
      return true;
    });
    rebuilt += file.bytes.substr(cursor);
    CHECK(rebuilt == file.bytes);
  }
}

TEST_CASE("parse_source: concurrent parsing from many threads") {
  auto files = corpus::ingest({testing::fixture_dir() / "corpus"});
  REQUIRE(!files.empty());
  std::vector<std::thread> workers;
  std::atomic<int> parsed{0};
  std::atomic<bool> mismatch{false};
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&] {
      for (int round = 0; round < 8; ++round) {
        for (const auto& file : files) {
          if (!file.language) continue;
          auto tree = parse::parse_source(file.bytes, *file.language);
          if (tree.text() != file.bytes) mismatch = true;
          ++parsed;
        }
      }
    });
  }
  for (auto& worker : workers) worker.join();
  CHECK_FALSE(mismatch.load());
  CHECK(parsed.load() > 0);
}
