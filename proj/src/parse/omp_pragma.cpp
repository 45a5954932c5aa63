#include "hpcode/parse/omp_pragma.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace hpcode::parse {

namespace {

std::string join_continuations(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\') {
      size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r'))
        ++j;
      if (j < text.size() && text[j] == '\n') {
        out.push_back(' ');
        i = j;
        continue;
      }
    }
    out.push_back(text[i]);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace((unsigned char)s.front())) s.remove_prefix(1);
  while (!s.empty() && std::isspace((unsigned char)s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  size_t start = 0;
  int depth = 0;  // commas inside nested parens/brackets stay in one item
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      auto item = trim(s.substr(start, i - start));
      if (!item.empty()) out.emplace_back(item);
      start = i + 1;
    } else if (s[i] == '(' || s[i] == '[') {
      ++depth;
    } else if (s[i] == ')' || s[i] == ']') {
      --depth;
    }
  }
  return out;
}

struct Token {
  std::string word;
  std::optional<std::string> args;  // inner text of a balanced (...) group
};

std::vector<Token> tokenize_body(std::string_view body) {
  std::vector<Token> tokens;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < body.size() && std::isspace((unsigned char)body[i])) ++i;
  };
  for (skip_ws(); i < body.size(); skip_ws()) {
    if (std::isalpha((unsigned char)body[i]) || body[i] == '_') {
      size_t start = i;
      while (i < body.size() &&
             (std::isalnum((unsigned char)body[i]) || body[i] == '_'))
        ++i;
      Token tok{std::string(body.substr(start, i - start)), std::nullopt};
      size_t j = i;
      while (j < body.size() && std::isspace((unsigned char)body[j])) ++j;
      if (j < body.size() && body[j] == '(') {
        int depth = 0;
        size_t open = j;
        for (; j < body.size(); ++j) {
          if (body[j] == '(') ++depth;
          if (body[j] == ')' && --depth == 0) break;
        }
        if (depth != 0)
          throw MalformedClause("unbalanced parentheses after '" + tok.word + "'");
        tok.args = std::string(body.substr(open + 1, j - open - 1));
        i = j + 1;
      }
      tokens.push_back(std::move(tok));
    } else if (body[i] == ')') {
      throw MalformedClause("unbalanced parentheses");
    } else {
      // Stray punctuation: attach to an Other clause verbatim.
      size_t start = i;
      while (i < body.size() && !std::isspace((unsigned char)body[i]) &&
             body[i] != '(')
        ++i;
      tokens.push_back(Token{std::string(body.substr(start, i - start)), {}});
    }
  }
  return tokens;
}

bool is_clause_keyword(const std::string& word) {
  static const std::array<std::string_view, 7> kw = {
      "private",  "firstprivate", "lastprivate", "reduction",
      "schedule", "num_threads",  "simd"};
  return std::find(kw.begin(), kw.end(), word) != kw.end();
}

Directive classify(const std::vector<std::string>& words) {
  auto is = [&](std::initializer_list<std::string_view> seq) {
    return std::equal(words.begin(), words.end(), seq.begin(), seq.end());
  };
  if (is({"parallel"})) return Directive::Parallel;
  if (is({"parallel", "for"})) return Directive::ParallelFor;
  if (is({"for"})) return Directive::For;
  if (is({"target", "teams", "distribute", "parallel", "for"}))
    return Directive::TargetTeamsDistributeParallelFor;
  return Directive::Other;
}

Clause make_clause(const Token& tok) {
  const std::string& w = tok.word;
  auto raw = [&] {
    std::string r = w;
    if (tok.args) r += "(" + *tok.args + ")";
    return r;
  };
  auto var_list = [&](std::string_view what) {
    if (!tok.args) throw MalformedClause(std::string(what) + " needs a variable list");
    auto vars = split_list(*tok.args);
    if (vars.empty())
      throw MalformedClause(std::string(what) + " has an empty variable list");
    return vars;
  };

  if (w == "private") return clause::Private{var_list(w)};
  if (w == "firstprivate") return clause::FirstPrivate{var_list(w)};
  if (w == "lastprivate") return clause::LastPrivate{var_list(w)};
  if (w == "simd" && !tok.args) return clause::Simd{};
  if (w == "reduction" && tok.args) {
    size_t colon = tok.args->find(':');
    if (colon == std::string::npos) return clause::Other{raw()};
    std::string op(trim(std::string_view(*tok.args).substr(0, colon)));
    auto vars = split_list(std::string_view(*tok.args).substr(colon + 1));
    if (!is_reduction_operator(op)) return clause::Other{raw()};
    if (vars.empty()) throw MalformedClause("reduction has an empty variable list");
    return clause::Reduction{std::move(op), std::move(vars)};
  }
  if (w == "schedule" && tok.args) {
    auto parts = split_list(*tok.args);
    if (parts.empty()) throw MalformedClause("schedule needs a kind");
    clause::Schedule s{parts[0], std::nullopt};
    if (parts.size() > 1) s.chunk = parts[1];
    return s;
  }
  if (w == "num_threads" && tok.args)
    return clause::NumThreads{std::string(trim(*tok.args))};
  return clause::Other{raw()};
}

}  // namespace

bool is_reduction_operator(std::string_view op) {
  static const std::array<std::string_view, 10> ops = {
      "+", "-", "*", "&", "|", "^", "&&", "||", "min", "max"};
  return std::find(ops.begin(), ops.end(), op) != ops.end();
}

OmpPragma parse_omp_pragma(std::string_view text) {
  OmpPragma pragma;
  pragma.raw_text.assign(text);

  std::string joined = join_continuations(text);
  std::string_view rest = trim(joined);
  for (std::string_view word : {std::string_view("#"), std::string_view("pragma"),
                                std::string_view("omp")}) {
    if (!rest.starts_with(word))
      throw NotAPragma("expected '#pragma omp' prefix");
    rest.remove_prefix(word.size());
    rest = trim(rest);
  }

  auto tokens = tokenize_body(rest);
  size_t i = 0;
  // Directive words: leading bare words that are not clause keywords.  A
  // bare `simd` counts as a directive word only when it comes first
  // (`#pragma omp simd`); after other directive words it is the simd
  // clause suffix.
  for (; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    if (tok.args) break;
    if (is_clause_keyword(tok.word) &&
        !(tok.word == "simd" && pragma.directive_words.empty()))
      break;
    pragma.directive_words.push_back(tok.word);
  }
  pragma.directive = classify(pragma.directive_words);
  for (; i < tokens.size(); ++i) pragma.clauses.push_back(make_clause(tokens[i]));
  return pragma;
}

std::string render(const Clause& c) {
  using namespace clause;
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        auto join = [](const std::vector<std::string>& vars) {
          std::string out;
          for (size_t i = 0; i < vars.size(); ++i) {
            if (i) out += ",";
            out += vars[i];
          }
          return out;
        };
        if constexpr (std::is_same_v<T, Private>)
          return "private(" + join(v.vars) + ")";
        else if constexpr (std::is_same_v<T, FirstPrivate>)
          return "firstprivate(" + join(v.vars) + ")";
        else if constexpr (std::is_same_v<T, LastPrivate>)
          return "lastprivate(" + join(v.vars) + ")";
        else if constexpr (std::is_same_v<T, Reduction>)
          return "reduction(" + v.op + ":" + join(v.vars) + ")";
        else if constexpr (std::is_same_v<T, Simd>)
          return "simd";
        else if constexpr (std::is_same_v<T, Schedule>)
          return "schedule(" + v.kind + (v.chunk ? "," + *v.chunk : "") + ")";
        else if constexpr (std::is_same_v<T, NumThreads>)
          return "num_threads(" + v.expr + ")";
        else
          return v.raw;
      },
      c);
}

std::string render(const OmpPragma& pragma) {
  std::string out = "#pragma omp";
  for (const auto& word : pragma.directive_words) out += " " + word;
  for (const auto& c : pragma.clauses) out += " " + render(c);
  return out;
}

}  // namespace hpcode::parse
