#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace engage::gbrt {

struct HistogramBin {
  double sum = 0.0;
  std::uint32_t count = 0;
};

struct SplitConstraints {
  int min_samples_per_leaf = 20;
  double lambda_l2 = 0.0;
};

// Totals for the node being split.
struct NodeTotals {
  double sum = 0.0;
  double sum_squares = 0.0;
  std::uint32_t count = 0;
};

// Best split over one feature's histogram. For numeric features bins
// 0..threshold_bin go left; for categorical features left_bins go left.
// gain == 0 means no admissible split.
struct BinSplit {
  double gain = 0.0;
  int threshold_bin = -1;
  std::vector<std::uint16_t> left_bins;
  double left_sum = 0.0;
  std::uint32_t left_count = 0;

  bool valid() const noexcept { return gain > 0.0; }
};

// SSE reduction G_L^2/(n_L+l) + G_R^2/(n_R+l) - G^2/(n+l).
double split_gain(double left_sum, double left_count, double right_sum, double right_count, double lambda_l2);

// Splits whose gain does not exceed this fraction of the node's sum of
// squared residuals are rejected as numerical noise.
inline constexpr double kRelativeMinGain = 1e-12;

// Numeric: scans bin boundaries left to right. Categorical: orders the
// non-empty bins by mean residual and scans that order as if ordinal,
// which finds the optimal two-group partition for squared error.
BinSplit find_best_split(std::span<const HistogramBin> histogram, bool categorical, const NodeTotals& totals,
                         const SplitConstraints& constraints);

// Convenience entry for raw columns: every distinct value becomes a bin.
struct ValueSplit {
  double gain = 0.0;
  std::optional<double> threshold;     // numeric: x <= threshold goes left
  std::vector<double> left_categories;  // categorical: codes going left
};

ValueSplit find_best_split(std::span<const double> feature_values, std::span<const double> residuals,
                           bool categorical, const SplitConstraints& constraints);

}  // namespace engage::gbrt
