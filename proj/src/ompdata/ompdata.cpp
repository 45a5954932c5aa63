#include "hpcode/ompdata/ompdata.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>

namespace hpcode::ompdata {

using parse::Clause;
using parse::Directive;
using parse::OmpPragma;

std::string NormalizedPragma::render() const {
  std::string out = "#pragma omp ";
  out += base == Base::ParallelFor ? "parallel for"
                                   : "target teams distribute parallel for";
  if (simd) out += " simd";
  if (!private_vars.empty()) {
    out += " private(";
    bool first = true;
    for (const auto& v : private_vars) {
      if (!first) out += ",";
      out += v;
      first = false;
    }
    out += ")";
  }
  if (reduction) {
    out += " reduction(" + reduction->op + ":";
    bool first = true;
    for (const auto& v : reduction->vars) {
      if (!first) out += ",";
      out += v;
      first = false;
    }
    out += ")";
  }
  return out;
}

NormalizedPragma normalize_pragma(const OmpPragma& pragma) {
  NormalizedPragma normalized;
  const auto& words = pragma.directive_words;
  bool target_form = words.size() >= 3 && words[0] == "target" &&
                     words[1] == "teams" && words[2] == "distribute";
  bool simd_directive =
      std::find(words.begin(), words.end(), "simd") != words.end();

  if (target_form) {
    normalized.base = NormalizedPragma::Base::TargetTeamsDistributeParallelFor;
  } else {
    switch (pragma.directive) {
      case Directive::Parallel:
      case Directive::ParallelFor:
      case Directive::For:
        normalized.base = NormalizedPragma::Base::ParallelFor;
        break;
      default:
        throw Unnormalizable("directive '" + parse::render(pragma) +
                             "' is outside the loop-parallelizing set");
    }
  }
  normalized.simd = simd_directive;

  for (const auto& c : pragma.clauses) {
    if (auto* p = std::get_if<parse::clause::Private>(&c)) {
      normalized.private_vars.insert(p->vars.begin(), p->vars.end());
    } else if (auto* fp = std::get_if<parse::clause::FirstPrivate>(&c)) {
      normalized.private_vars.insert(fp->vars.begin(), fp->vars.end());
    } else if (auto* lp = std::get_if<parse::clause::LastPrivate>(&c)) {
      normalized.private_vars.insert(lp->vars.begin(), lp->vars.end());
    } else if (auto* red = std::get_if<parse::clause::Reduction>(&c)) {
      if (!normalized.reduction) {
        normalized.reduction =
            NormalizedPragma::Reduction{red->op, {red->vars.begin(), red->vars.end()}};
      } else if (normalized.reduction->op == red->op) {
        normalized.reduction->vars.insert(red->vars.begin(), red->vars.end());
      } else {
        std::cerr << "ompdata: dropping second reduction operator '" << red->op
                  << "' (keeping '" << normalized.reduction->op << "')\n";
      }
    } else if (std::holds_alternative<parse::clause::Simd>(c)) {
      normalized.simd = true;
    } else {
      std::cerr << "ompdata: dropping clause '" << parse::render(c)
                << "' during normalization\n";
    }
  }

  if (normalized.reduction)
    for (const auto& v : normalized.reduction->vars)
      normalized.private_vars.erase(v);
  return normalized;
}

namespace {

bool span_inside(const parse::Span& inner, const parse::Span& outer) {
  return outer.begin <= inner.begin && inner.end <= outer.end &&
         !(inner == outer);
}

}  // namespace

std::vector<LoopSample> extract_dataset(const std::vector<SourceInput>& files,
                                        const ExtractOptions& options) {
  std::vector<LoopSample> positives;
  std::vector<LoopSample> negative_pool;

  for (const auto& file : files) {
    std::optional<parse::SyntaxTree> parsed;
    try {
      parsed = parse::parse_source(file.text, file.language);
    } catch (const parse::DecodeError& e) {
      std::cerr << "ompdata: skipping file: " << e.what() << "\n";
      continue;
    }
    const parse::SyntaxTree& tree = *parsed;
    parse::PragmaScan scan = parse::find_pragma_sites(tree, file.file_id);

    std::vector<parse::Span> positive_spans;
    std::vector<parse::Span> annotated_spans;  // includes unnormalizable ones
    for (const auto& site : scan.sites) {
      annotated_spans.push_back(site.loop_span);
      std::optional<NormalizedPragma> label;
      try {
        label = normalize_pragma(site.pragma);
      } catch (const Unnormalizable&) {
        continue;  // annotated with a non-loop directive; not a sample
      }
      positive_spans.push_back(site.loop_span);
      positives.push_back(LoopSample{
          std::string(tree.text(site.loop_span)), std::move(label),
          BenchRef{file.file_id, site.loop_span}, file.language});
    }

    tree.walk([&](const parse::Node& node) {
      std::string_view kind = node.kind();
      if (kind != "for_statement" && kind != "for_range_loop") return true;
      parse::Span span = node.span();
      bool annotated = std::any_of(
          annotated_spans.begin(), annotated_spans.end(),
          [&](const parse::Span& s) { return s == span; });
      if (annotated) return true;
      // Loops nested inside a labeled loop inherit its pragma's effects;
      // keep them out of the negative pool.
      bool inside_positive =
          std::any_of(positive_spans.begin(), positive_spans.end(),
                      [&](const parse::Span& s) { return span_inside(span, s); });
      if (inside_positive) return true;
      negative_pool.push_back(LoopSample{std::string(tree.text(span)),
                                         std::nullopt,
                                         BenchRef{file.file_id, span},
                                         file.language});
      return true;
    });
  }

  std::vector<LoopSample> negatives;
  if (!options.balance) {
    negatives = std::move(negative_pool);
  } else {
    size_t want = (size_t)std::ceil(options.neg_ratio * (double)positives.size());
    if (want >= negative_pool.size()) {
      if (want > negative_pool.size())
        std::cerr << "ompdata: requested " << want
                  << " negative samples but only " << negative_pool.size()
                  << " plain loops exist; keeping all\n";
      negatives = std::move(negative_pool);
    } else {
      // Seeded partial Fisher-Yates over pool indices, then corpus order.
      std::mt19937_64 rng(options.seed);
      std::vector<size_t> indices(negative_pool.size());
      for (size_t i = 0; i < indices.size(); ++i) indices[i] = i;
      for (size_t i = 0; i < want; ++i) {
        size_t j = i + (size_t)(rng() % (uint64_t)(indices.size() - i));
        std::swap(indices[i], indices[j]);
      }
      indices.resize(want);
      std::sort(indices.begin(), indices.end());
      negatives.reserve(want);
      for (size_t idx : indices) negatives.push_back(std::move(negative_pool[idx]));
    }
  }

  std::vector<LoopSample> samples = std::move(positives);
  for (auto& neg : negatives) samples.push_back(std::move(neg));
  return samples;
}

ClauseHistogram clause_histogram(const std::vector<LoopSample>& samples) {
  ClauseHistogram histogram;
  for (const auto& sample : samples) {
    if (!sample.label) continue;
    auto& row = histogram.per_language[std::string(
        parse::language_name(sample.language))];
    row.total += 1;
    if (!sample.label->private_vars.empty()) row.private_count += 1;
    if (sample.label->reduction) row.reduction_count += 1;
    if (sample.label->private_vars.empty() && !sample.label->reduction)
      row.plain_count += 1;
    if (sample.label->base ==
        NormalizedPragma::Base::TargetTeamsDistributeParallelFor)
      row.target_count += 1;
  }
  return histogram;
}

}  // namespace hpcode::ompdata
