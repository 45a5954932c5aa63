#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string_view>

namespace hpcode::metrics {

class NonPositive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Magnitude bands for speedup (>= 1) and slowdown (< 1, banded by its
// reciprocal).  All bands are left-closed: exactly 2.0 lands in Imp2To5.
enum class SpeedupBucket {
  DegGt10,
  Deg5To10,
  Deg2To5,
  Deg1To2,
  Imp1To2,
  Imp2To5,
  Imp5To10,
  ImpGt10,
};

std::string_view bucket_name(SpeedupBucket b);
bool is_improvement(SpeedupBucket b);

SpeedupBucket bucket_speedup(double speedup);  // throws NonPositive

// Bucket counts; always partitions the sample set.
std::map<SpeedupBucket, size_t> bucket_histogram(std::span<const double> speedups);

}  // namespace hpcode::metrics
