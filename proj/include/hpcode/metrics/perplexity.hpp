#pragma once

#include <span>
#include <stdexcept>

namespace hpcode::metrics {

class EmptySequence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exp(-mean) of per-token natural-log probabilities.
double perplexity(std::span<const double> logprobs);

}  // namespace hpcode::metrics
