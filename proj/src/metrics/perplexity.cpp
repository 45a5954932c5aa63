#include "hpcode/metrics/perplexity.hpp"

#include <cmath>
#include <numeric>

namespace hpcode::metrics {

double perplexity(std::span<const double> logprobs) {
  if (logprobs.empty()) throw EmptySequence("no log-probabilities supplied");
  double sum = std::accumulate(logprobs.begin(), logprobs.end(), 0.0);
  return std::exp(-sum / (double)logprobs.size());
}

}  // namespace hpcode::metrics
