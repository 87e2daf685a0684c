#include "engage/gbrt/split.hpp"

#include <algorithm>
#include <numeric>

#include "engage/error.hpp"
#include "engage/gbrt/binning.hpp"

namespace engage::gbrt {

double split_gain(double left_sum, double left_count, double right_sum, double right_count, double lambda_l2) {
  const double n = left_count + right_count;
  if (lambda_l2 == 0.0) {
    // Same quantity as the textbook form, written as a squared mean
    // difference so identical residuals give exactly zero gain.
    const double diff = left_sum / left_count - right_sum / right_count;
    return left_count * right_count / n * diff * diff;
  }
  const double total = left_sum + right_sum;
  return left_sum * left_sum / (left_count + lambda_l2) + right_sum * right_sum / (right_count + lambda_l2) -
         total * total / (n + lambda_l2);
}

namespace {

bool admissible(std::uint32_t left, std::uint32_t right, const SplitConstraints& c) {
  const auto min_leaf = static_cast<std::uint32_t>(std::max(c.min_samples_per_leaf, 1));
  return left >= min_leaf && right >= min_leaf;
}

}  // namespace

BinSplit find_best_split(std::span<const HistogramBin> histogram, bool categorical, const NodeTotals& totals,
                         const SplitConstraints& constraints) {
  BinSplit best;
  const double min_gain = kRelativeMinGain * totals.sum_squares;
  if (totals.count < 2) return best;

  // Scan order over bins: natural order, or ascending mean residual.
  std::vector<std::uint16_t> order;
  order.reserve(histogram.size());
  for (std::size_t b = 0; b < histogram.size(); ++b) {
    if (!categorical || histogram[b].count > 0) order.push_back(static_cast<std::uint16_t>(b));
  }
  if (categorical) {
    std::stable_sort(order.begin(), order.end(), [&](std::uint16_t a, std::uint16_t b) {
      return histogram[a].sum / histogram[a].count < histogram[b].sum / histogram[b].count;
    });
  }

  double left_sum = 0.0;
  std::uint32_t left_count = 0;
  int best_pos = -1;
  for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
    left_sum += histogram[order[pos]].sum;
    left_count += histogram[order[pos]].count;
    const std::uint32_t right_count = totals.count - left_count;
    if (left_count == 0 || right_count == 0 || !admissible(left_count, right_count, constraints)) continue;
    const double gain = split_gain(left_sum, left_count, totals.sum - left_sum, right_count, constraints.lambda_l2);
    if (gain > min_gain && gain > best.gain) {
      best.gain = gain;
      best.left_sum = left_sum;
      best.left_count = left_count;
      best_pos = static_cast<int>(pos);
    }
  }
  if (best_pos < 0) return BinSplit{};

  if (categorical) {
    best.left_bins.assign(order.begin(), order.begin() + best_pos + 1);
    std::sort(best.left_bins.begin(), best.left_bins.end());
  } else {
    best.threshold_bin = order[best_pos];
  }
  return best;
}

ValueSplit find_best_split(std::span<const double> feature_values, std::span<const double> residuals,
                           bool categorical, const SplitConstraints& constraints) {
  if (feature_values.size() != residuals.size()) {
    throw Error(ErrorKind::kInvalidArgument, "feature and residual lengths differ");
  }
  const auto bins = categorical ? FeatureBins::categorical(feature_values)
                                : FeatureBins::numeric(feature_values, 1 << 15);
  std::vector<HistogramBin> hist(bins.num_bins());
  NodeTotals totals;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    auto& h = hist[bins.bin_of(feature_values[i])];
    h.sum += residuals[i];
    ++h.count;
    totals.sum += residuals[i];
    totals.sum_squares += residuals[i] * residuals[i];
    ++totals.count;
  }
  const auto split = find_best_split(hist, categorical, totals, constraints);
  ValueSplit out;
  if (!split.valid()) return out;
  out.gain = split.gain;
  if (categorical) {
    for (auto b : split.left_bins) out.left_categories.push_back(bins.categories()[b]);
  } else {
    out.threshold = bins.thresholds()[split.threshold_bin];
  }
  return out;
}

}  // namespace engage::gbrt
