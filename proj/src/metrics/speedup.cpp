#include "hpcode/metrics/speedup.hpp"

namespace hpcode::metrics {

std::string_view bucket_name(SpeedupBucket b) {
  switch (b) {
    case SpeedupBucket::DegGt10: return "deg>10x";
    case SpeedupBucket::Deg5To10: return "deg5x-10x";
    case SpeedupBucket::Deg2To5: return "deg2x-5x";
    case SpeedupBucket::Deg1To2: return "deg1x-2x";
    case SpeedupBucket::Imp1To2: return "imp1x-2x";
    case SpeedupBucket::Imp2To5: return "imp2x-5x";
    case SpeedupBucket::Imp5To10: return "imp5x-10x";
    case SpeedupBucket::ImpGt10: return "imp>10x";
  }
  return "?";
}

bool is_improvement(SpeedupBucket b) {
  return b == SpeedupBucket::Imp1To2 || b == SpeedupBucket::Imp2To5 ||
         b == SpeedupBucket::Imp5To10 || b == SpeedupBucket::ImpGt10;
}

SpeedupBucket bucket_speedup(double speedup) {
  if (!(speedup > 0.0)) throw NonPositive("speedup must be positive");
  bool improvement = speedup >= 1.0;
  double magnitude = improvement ? speedup : 1.0 / speedup;
  if (magnitude < 2.0)
    return improvement ? SpeedupBucket::Imp1To2 : SpeedupBucket::Deg1To2;
  if (magnitude < 5.0)
    return improvement ? SpeedupBucket::Imp2To5 : SpeedupBucket::Deg2To5;
  if (magnitude < 10.0)
    return improvement ? SpeedupBucket::Imp5To10 : SpeedupBucket::Deg5To10;
  return improvement ? SpeedupBucket::ImpGt10 : SpeedupBucket::DegGt10;
}

std::map<SpeedupBucket, size_t> bucket_histogram(
    std::span<const double> speedups) {
  std::map<SpeedupBucket, size_t> histogram;
  for (double s : speedups) ++histogram[bucket_speedup(s)];
  return histogram;
}

}  // namespace hpcode::metrics
