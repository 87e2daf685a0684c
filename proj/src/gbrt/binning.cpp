#include "engage/gbrt/binning.hpp"

#include <algorithm>
#include <limits>

#include "engage/error.hpp"

namespace engage::gbrt {

namespace {

// Boundary strictly below `hi` and at or above `lo`.
double boundary(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid < hi ? mid : lo;
}

}  // namespace

FeatureBins FeatureBins::numeric(std::span<const double> values, int max_bins) {
  if (max_bins < 2) throw Error(ErrorKind::kInvalidConfig, "histogram_bins must be >= 2");
  FeatureBins fb;
  if (values.empty()) return fb;

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct;
  std::vector<std::size_t> counts;
  for (double v : sorted) {
    if (distinct.empty() || v != distinct.back()) {
      distinct.push_back(v);
      counts.push_back(0);
    }
    ++counts.back();
  }

  if (distinct.size() <= static_cast<std::size_t>(max_bins)) {
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
      fb.thresholds_.push_back(boundary(distinct[i], distinct[i + 1]));
    }
    return fb;
  }

  // Equal-count cuts: close bin k once the running count reaches
  // (k + 1) * N / max_bins.
  const double n = static_cast<double>(sorted.size());
  const double per_bin = n / static_cast<double>(max_bins);
  std::size_t running = 0;
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    running += counts[i];
    const auto closed = fb.thresholds_.size();
    if (closed + 1 >= static_cast<std::size_t>(max_bins)) break;
    if (static_cast<double>(running) >= per_bin * static_cast<double>(closed + 1)) {
      fb.thresholds_.push_back(boundary(distinct[i], distinct[i + 1]));
    }
  }
  return fb;
}

FeatureBins FeatureBins::categorical(std::span<const double> codes) {
  FeatureBins fb;
  fb.categorical_ = true;
  fb.categories_.assign(codes.begin(), codes.end());
  std::sort(fb.categories_.begin(), fb.categories_.end());
  fb.categories_.erase(std::unique(fb.categories_.begin(), fb.categories_.end()), fb.categories_.end());
  if (fb.categories_.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw Error(ErrorKind::kInvalidArgument, "too many categories for one feature");
  }
  return fb;
}

int FeatureBins::num_bins() const noexcept {
  if (categorical_) return static_cast<int>(std::max<std::size_t>(categories_.size(), 1));
  return static_cast<int>(thresholds_.size()) + 1;
}

std::uint16_t FeatureBins::bin_of(double value) const {
  if (categorical_) {
    auto it = std::lower_bound(categories_.begin(), categories_.end(), value);
    if (it == categories_.end() || *it != value) {
      throw Error(ErrorKind::kInvalidArgument, "category code not present in training bins");
    }
    return static_cast<std::uint16_t>(it - categories_.begin());
  }
  return static_cast<std::uint16_t>(std::lower_bound(thresholds_.begin(), thresholds_.end(), value) -
                                    thresholds_.begin());
}

}  // namespace engage::gbrt
