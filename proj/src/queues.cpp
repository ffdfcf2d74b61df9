#include "mec/queues.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "mec/error.hpp"

namespace mec {

double update_local(double q, double served, double arrived) {
  require(q >= 0.0 && served >= 0.0 && arrived >= 0.0, "update_local: negative input");
  return std::max(q - served, 0.0) + arrived;
}

double update_virtual(double h, double executed, double offloaded) {
  require(h >= 0.0 && executed >= 0.0 && offloaded >= 0.0, "update_virtual: negative input");
  return std::max(h - executed, 0.0) + offloaded;
}

StabilityReport stability_diagnostic(std::span<const double> totals) {
  require(totals.size() >= kMinStabilityHistory, [&] { return "stability_diagnostic: need at least " + std::to_string(kMinStabilityHistory) +
              " slots, got " + std::to_string(totals.size()); });
  const std::size_t half = totals.size() / 2;
  const auto first = totals.first(half);
  const auto second = totals.subspan(half);

  StabilityReport r;
  r.mean_first_half = std::accumulate(first.begin(), first.end(), 0.0) / static_cast<double>(first.size());
  r.mean_second_half = std::accumulate(second.begin(), second.end(), 0.0) / static_cast<double>(second.size());
  if (r.mean_first_half > 0.0)
    r.ratio = r.mean_second_half / r.mean_first_half;
  else
    r.ratio = r.mean_second_half > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  r.unstable = r.ratio > kInstabilityRatio;
  return r;
}

}  // namespace mec
