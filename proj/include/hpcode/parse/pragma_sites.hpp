#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hpcode/parse/omp_pragma.hpp"
#include "hpcode/parse/syntax_tree.hpp"

namespace hpcode::parse {

class ParseFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An `#pragma omp` line attached to the `for` statement that follows it.
struct PragmaSite {
  uint64_t file_id = 0;
  OmpPragma pragma;
  Span loop_span;    // the attached for statement ({0,0} for orphans)
  Span pragma_span;  // the pragma line(s), continuations included
};

struct PragmaScan {
  std::vector<PragmaSite> sites;
  std::vector<PragmaSite> orphans;  // omp pragmas not followed by a for
};

// Stacked pragmas (`#pragma omp parallel` directly above `#pragma omp
// for`) each yield their own site on the same loop.
PragmaScan find_pragma_sites(const SyntaxTree& tree, uint64_t file_id = 0);

// Removes every `#pragma omp` line (continuations included) and returns
// the serial text plus the removed sites with their original spans.
// Throws ParseFailure when the input has more than max_errors parse
// errors.
std::pair<std::string, std::vector<PragmaSite>> strip_pragmas(
    std::string_view text, Language language, int max_errors = 0,
    uint64_t file_id = 0);

}  // namespace hpcode::parse
