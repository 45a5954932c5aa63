#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "hpcode/metrics/codebleu.hpp"
#include "hpcode/metrics/confusion.hpp"
#include "hpcode/metrics/perplexity.hpp"
#include "hpcode/metrics/speedup.hpp"
#include "hpcode/ompdata/ompdata.hpp"
#include "support/fixtures.hpp"

using namespace hpcode;
using metrics::ClauseKind;
using metrics::Outcome;
using ompdata::NormalizedPragma;
using parse::Language;

namespace {

// Independent perplexity route: geometric mean of the probabilities,
// inverted.  Runs in extended precision over the raw products.
long double perplexity_oracle(const std::vector<double>& logprobs) {
  long double product = 1.0L;
  for (double lp : logprobs) product *= std::exp((long double)lp);
  return std::pow(product, -1.0L / (long double)logprobs.size());
}

NormalizedPragma pragma_with(std::set<std::string> private_vars,
                             std::optional<NormalizedPragma::Reduction> red) {
  NormalizedPragma p;
  p.private_vars = std::move(private_vars);
  p.reduction = std::move(red);
  return p;
}

}  // namespace

TEST_CASE("perplexity: certain model scores 1") {
  std::vector<double> zeros(10, 0.0);
  CHECK(metrics::perplexity(zeros) == 1.0);
}

TEST_CASE("perplexity: uniform model scores the vocabulary size") {
  const double vocab = 50257.0;
  std::vector<double> logprobs(8, -std::log(vocab));
  double p = metrics::perplexity(logprobs);
  CHECK(std::llround(p) == 50257);
  CHECK(std::fabs(p - vocab) / vocab <= 1e-14);
}

TEST_CASE("perplexity: [-1,-3] gives exp(2)") {
  std::vector<double> logprobs = {-1.0, -3.0};
  CHECK(metrics::perplexity(logprobs) == doctest::Approx(std::exp(2.0)).epsilon(1e-12));
}

TEST_CASE("perplexity: empty input throws") {
  CHECK_THROWS_AS(metrics::perplexity({}), metrics::EmptySequence);
}

TEST_CASE("perplexity: 1000 random vectors against the brute-force oracle") {
  std::mt19937_64 rng(0xFEED);
  std::uniform_real_distribution<double> logprob(-10.0, 0.0);
  std::uniform_int_distribution<int> length(1, 200);
  for (int round = 0; round < 1000; ++round) {
    std::vector<double> lps(length(rng));
    for (auto& lp : lps) lp = logprob(rng);
    double got = metrics::perplexity(lps);
    long double want = perplexity_oracle(lps);
    CHECK(std::fabs((long double)got - want) / want <= 1e-12L);
  }
}

TEST_CASE("clause_presence_eval: Fig-7-style walkthrough") {
  // label: private(A,B) reduction(+:sum); prediction: private only
  auto label = pragma_with({"A", "B"}, NormalizedPragma::Reduction{"+", {"sum"}});
  auto pred = pragma_with({"A", "B", "X"}, std::nullopt);
  CHECK(metrics::clause_presence_eval(pred, label, ClauseKind::Private) ==
        Outcome::TP);
  CHECK(metrics::clause_presence_eval(pred, label, ClauseKind::Reduction) ==
        Outcome::FN);
}

TEST_CASE("clause_presence_eval: nulls and false positives") {
  CHECK(metrics::clause_presence_eval(std::nullopt, std::nullopt,
                                      ClauseKind::Private) == Outcome::TN);
  CHECK(metrics::clause_presence_eval(std::nullopt, std::nullopt,
                                      ClauseKind::Reduction) == Outcome::TN);
  auto pred = pragma_with({}, NormalizedPragma::Reduction{"+", {"s"}});
  auto label = pragma_with({}, std::nullopt);
  CHECK(metrics::clause_presence_eval(pred, label, ClauseKind::Reduction) ==
        Outcome::FP);
}

TEST_CASE("variable_set_eval: Fig-7 inner-clause example") {
  auto result = metrics::variable_set_eval({"A", "B", "X"}, {"A", "B"});
  CHECK(result.tp == 2);
  CHECK(result.fp == 1);
  CHECK(result.fn == 0);
}

TEST_CASE("variable_set_eval: equality and empty prediction") {
  auto equal = metrics::variable_set_eval({"i", "j"}, {"j", "i"});
  CHECK(equal.tp == 2);
  CHECK(equal.fp == 0);
  CHECK(equal.fn == 0);

  auto empty = metrics::variable_set_eval({}, {"i"});
  CHECK(empty.tp == 0);
  CHECK(empty.fn == 1);
}

TEST_CASE("variable_set_eval: partition property over random sets") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 300; ++round) {
    std::set<std::string> pred, label;
    for (int i = 0; i < 12; ++i) {
      std::string v = "v" + std::to_string(rng() % 16);
      if (rng() % 2) pred.insert(v);
      if (rng() % 2) label.insert(v);
    }
    auto result = metrics::variable_set_eval(pred, label);
    CHECK(result.tp + result.fn == label.size());
    CHECK(result.tp + result.fp == pred.size());
  }
}

TEST_CASE("reduction_operator_eval: equality, mismatch, missing") {
  CHECK(metrics::reduction_operator_eval("+", "+"));
  CHECK_FALSE(metrics::reduction_operator_eval("+", "max"));
  CHECK(metrics::reduction_operator_eval(" + ", "+"));
  CHECK_THROWS_AS(metrics::reduction_operator_eval(std::nullopt, "+"),
                  metrics::MissingOperand);
}

TEST_CASE("reduction_operator_eval: 16 of 20 matching gives 0.8 accuracy") {
  int correct = 0;
  for (int i = 0; i < 20; ++i) {
    std::string pred = i < 16 ? "+" : "max";
    if (metrics::reduction_operator_eval(pred, "+")) ++correct;
  }
  CHECK(correct / 20.0 == doctest::Approx(0.8));
}

TEST_CASE("aggregate_confusion: accuracy-table row arithmetic") {
  metrics::ConfusionCounts counts{311, 127, 262, 70};
  CHECK(*counts.precision() == doctest::Approx(0.710).epsilon(1e-3));
  CHECK(*counts.recall() == doctest::Approx(0.816).epsilon(1e-3));
  CHECK(*counts.accuracy() == doctest::Approx(0.744).epsilon(1e-3));

  metrics::ConfusionCounts reclassified{407, 31, 262, 70};
  CHECK(*reclassified.precision() == doctest::Approx(0.929).epsilon(1e-3));
  CHECK(*reclassified.recall() == doctest::Approx(0.853).epsilon(1e-3));
  CHECK(*reclassified.accuracy() == doctest::Approx(0.869).epsilon(1e-3));
}

TEST_CASE("aggregate_confusion: sums outcomes; zero counts are undefined") {
  std::vector<Outcome> outcomes;
  outcomes.insert(outcomes.end(), 3, Outcome::TP);
  outcomes.insert(outcomes.end(), 2, Outcome::FP);
  outcomes.insert(outcomes.end(), 4, Outcome::TN);
  outcomes.insert(outcomes.end(), 1, Outcome::FN);
  auto counts = metrics::aggregate_confusion(outcomes);
  CHECK(counts == metrics::ConfusionCounts{3, 2, 4, 1});

  metrics::ConfusionCounts zero;
  CHECK_FALSE(zero.precision().has_value());
  CHECK_FALSE(zero.recall().has_value());
  CHECK_FALSE(zero.accuracy().has_value());
}

TEST_CASE("bucket_speedup: documented boundaries") {
  using metrics::SpeedupBucket;
  CHECK(metrics::bucket_speedup(3.2) == SpeedupBucket::Imp2To5);
  CHECK(metrics::bucket_speedup(0.4) == SpeedupBucket::Deg2To5);  // 1/0.4 = 2.5
  CHECK(metrics::bucket_speedup(2.0) == SpeedupBucket::Imp2To5);  // left-closed
  CHECK(metrics::bucket_speedup(10.0) == SpeedupBucket::ImpGt10);
  CHECK(metrics::bucket_speedup(1.0) == SpeedupBucket::Imp1To2);
  CHECK(metrics::bucket_speedup(0.05) == SpeedupBucket::DegGt10);
  CHECK_THROWS_AS(metrics::bucket_speedup(0.0), metrics::NonPositive);
  CHECK_THROWS_AS(metrics::bucket_speedup(-1.0), metrics::NonPositive);
}

TEST_CASE("bucket_histogram: partitions every sample set") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> speedup(0.01, 20.0);
  for (int round = 0; round < 50; ++round) {
    std::vector<double> samples(1 + rng() % 200);
    for (auto& s : samples) s = speedup(rng);
    auto histogram = metrics::bucket_histogram(samples);
    size_t total = 0;
    for (const auto& [bucket, count] : histogram) total += count;
    CHECK(total == samples.size());
  }
}

TEST_CASE("codebleu: self-similarity is exactly 1") {
  const char* samples[] = {
      "int f(int a){return a+1;}",
      "for (int i = 0; i < n; i++) s += a[i];",
      "double g(double x){ if (x > 0) return x; return -x; }",
  };
  for (const char* text : samples) {
    auto score = metrics::codebleu(text, text, Language::C);
    CHECK(score.combined == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*score.ngram == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*score.weighted_ngram == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*score.ast_match == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("codebleu: disjoint tokens zero the ngram component") {
  auto score = metrics::codebleu("alpha beta gamma", "delta epsilon zeta",
                                 Language::C);
  CHECK(*score.ngram == 0.0);
}

TEST_CASE("codebleu: one renamed variable lands strictly between") {
  const char* reference =
      "int total(int *a, int n){ int s = 0; for (int i = 0; i < n; i++) s += a[i]; return s; }";
  const char* renamed =
      "int total(int *a, int n){ int q = 0; for (int i = 0; i < n; i++) q += a[i]; return q; }";
  auto self_score = metrics::codebleu(reference, reference, Language::C);
  auto near_score = metrics::codebleu(renamed, reference, Language::C);
  auto far_score = metrics::codebleu("alpha beta gamma", reference, Language::C);
  CHECK(near_score.combined > far_score.combined);
  CHECK(near_score.combined < self_score.combined);
  // renaming is invisible to the structural components
  CHECK(*near_score.ast_match == doctest::Approx(1.0));
  CHECK(*near_score.dataflow_match == doctest::Approx(1.0));
  CHECK(*near_score.ngram < 1.0);
}

TEST_CASE("codebleu: combined stays in [0,1] across corpus pairs") {
  auto units = testing::fixture_corpus(30);
  REQUIRE(units.size() >= 30);
  std::mt19937_64 rng(7);
  for (int round = 0; round < 60; ++round) {
    const auto& a = units[rng() % units.size()];
    const auto& b = units[rng() % units.size()];
    auto score = metrics::codebleu(a.source_text, b.source_text, a.language);
    CHECK(score.combined >= 0.0);
    CHECK(score.combined <= 1.0);
    if (score.ngram) CHECK(*score.ngram <= 1.0 + 1e-12);
    if (score.ast_match) CHECK(*score.ast_match <= 1.0 + 1e-12);
    if (score.dataflow_match) CHECK(*score.dataflow_match <= 1.0 + 1e-12);
  }
}

TEST_CASE("codebleu: dropping candidate tokens never beats the identical"
          " candidate") {
  const char* reference =
      "void scale(double *x, int n, double k){ for (int i = 0; i < n; i++) x[i] *= k; }";
  auto self_score = metrics::codebleu(reference, reference, Language::C);
  std::string truncated(reference, 50);  // cut mid-way
  auto cut_score = metrics::codebleu(truncated, reference, Language::C);
  CHECK(*cut_score.ngram <= *self_score.ngram);
}

TEST_CASE("codebleu: undefined dataflow redistributes weight") {
  // no identifiers at all: no def-use edges on either side
  auto score = metrics::codebleu("return 1;", "return 1;", Language::C);
  CHECK_FALSE(score.dataflow_match.has_value());
  CHECK(score.combined == doctest::Approx(1.0));
}

TEST_CASE("codebleu: keyword weighting separates keyword-preserving"
          " candidates") {
  const char* reference = "if (a) return b; else return c;";
  const char* keywords_kept = "if (x) return y; else return z;";
  const char* keywords_lost = "when (a) give b; otherwise give c;";
  auto kept = metrics::codebleu(keywords_kept, reference, Language::C);
  auto lost = metrics::codebleu(keywords_lost, reference, Language::C);
  CHECK(*kept.weighted_ngram > *lost.weighted_ngram);
  CHECK(*kept.weighted_ngram > *kept.ngram);  // keywords upweighted
}

TEST_CASE("codebleu: empty candidate fails to tokenize") {
  CHECK_THROWS_AS(metrics::codebleu("", "int x;", Language::C),
                  metrics::TokenizeFailure);
}

TEST_CASE("dataflow_edges: def-use chain shape") {
  auto tree = parse::parse_source("int x = 1; int y = x + x; x = y;",
                                  Language::C);
  auto edges = metrics::dataflow_edges(tree);
  // x defined (occ 0), used twice (occ 1, 2), redefined (occ 3, uses y)
  // y defined (occ 0), used once (occ 1)
  int x_edges = 0, y_edges = 0;
  for (const auto& e : edges) (e.var == 0 ? x_edges : y_edges)++;
  CHECK(x_edges == 2);
  CHECK(y_edges == 1);
}

TEST_CASE("dataflow_edges: renaming variables is invisible") {
  auto a = parse::parse_source("int s = 0; for (int i = 0; i < 9; i++) s += i;",
                               Language::C);
  auto b = parse::parse_source("int q = 0; for (int k = 0; k < 9; k++) q += k;",
                               Language::C);
  CHECK(metrics::dataflow_edges(a) == metrics::dataflow_edges(b));
}
