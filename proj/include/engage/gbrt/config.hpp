#pragma once

#include <cstdint>

#include "json.hpp"

namespace engage::gbrt {

struct GbrtConfig {
  int num_trees = 300;
  double learning_rate = 0.1;
  int max_leaves = 31;
  int min_samples_per_leaf = 20;
  int histogram_bins = 255;
  double lambda_l2 = 0.0;
  std::uint64_t seed = 0;
  // Execution only; never changes the fitted model.
  int threads = 1;

  // Throws kInvalidConfig.
  void validate() const;

  nlohmann::ordered_json to_json() const;
  static GbrtConfig from_json(const nlohmann::json& j);
};

}  // namespace engage::gbrt
