#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace engage::gbrt {

// Maps one feature column to histogram bins.
//
// Numeric columns keep each distinct value in its own bin when there are
// at most max_bins of them; otherwise bins are cut at equal-count
// quantiles of the training column. thresholds[k] separates bin k from
// bin k+1 and satisfies max(bin k) <= thresholds[k] < min(bin k+1).
//
// Categorical columns get one bin per distinct code, in ascending code
// order.
class FeatureBins {
 public:
  static FeatureBins numeric(std::span<const double> values, int max_bins);
  static FeatureBins categorical(std::span<const double> codes);

  bool is_categorical() const noexcept { return categorical_; }
  int num_bins() const noexcept;
  std::uint16_t bin_of(double value) const;

  const std::vector<double>& thresholds() const noexcept { return thresholds_; }
  const std::vector<double>& categories() const noexcept { return categories_; }

 private:
  bool categorical_ = false;
  std::vector<double> thresholds_;
  std::vector<double> categories_;
};

// Column-major bin codes for a training matrix.
struct BinnedColumns {
  std::vector<FeatureBins> bins;
  std::vector<std::vector<std::uint16_t>> codes;
};

}  // namespace engage::gbrt
