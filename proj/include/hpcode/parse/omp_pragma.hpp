#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hpcode::parse {

class NotAPragma : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedClause : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Directive {
  Parallel,
  ParallelFor,
  For,
  TargetTeamsDistributeParallelFor,
  Other,
};

namespace clause {

struct Private {
  std::vector<std::string> vars;
  bool operator==(const Private&) const = default;
};
struct FirstPrivate {
  std::vector<std::string> vars;
  bool operator==(const FirstPrivate&) const = default;
};
struct LastPrivate {
  std::vector<std::string> vars;
  bool operator==(const LastPrivate&) const = default;
};
struct Reduction {
  std::string op;  // one of + - * & | ^ && || min max
  std::vector<std::string> vars;
  bool operator==(const Reduction&) const = default;
};
struct Simd {
  bool operator==(const Simd&) const = default;
};
struct Schedule {
  std::string kind;
  std::optional<std::string> chunk;
  bool operator==(const Schedule&) const = default;
};
struct NumThreads {
  std::string expr;
  bool operator==(const NumThreads&) const = default;
};
struct Other {
  std::string raw;
  bool operator==(const Other&) const = default;
};

}  // namespace clause

using Clause =
    std::variant<clause::Private, clause::FirstPrivate, clause::LastPrivate,
                 clause::Reduction, clause::Simd, clause::Schedule,
                 clause::NumThreads, clause::Other>;

bool is_reduction_operator(std::string_view op);

// Structured form of one `#pragma omp` line.  directive_words keeps the
// raw directive spelling so unknown directives stay representable and
// render() round-trips.
struct OmpPragma {
  Directive directive = Directive::Other;
  std::vector<std::string> directive_words;
  std::vector<Clause> clauses;
  std::string raw_text;

  bool operator==(const OmpPragma& other) const {
    return directive == other.directive &&
           directive_words == other.directive_words && clauses == other.clauses;
  }
};

// Accepts leading whitespace and backslash-newline continuations.  Throws
// NotAPragma when the `#pragma omp` prefix is missing, MalformedClause on
// unbalanced parentheses or empty variable lists.  Unknown clauses are
// kept as clause::Other, never rejected.
OmpPragma parse_omp_pragma(std::string_view text);

std::string render(const OmpPragma& pragma);
std::string render(const Clause& c);

}  // namespace hpcode::parse
