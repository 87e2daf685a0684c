#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "engage/features/features.hpp"
#include "engage/gbrt/config.hpp"
#include "engage/gbrt/split.hpp"
#include "engage/gbrt/tree.hpp"
#include "json.hpp"

namespace engage::gbrt {

struct GbrtModel {
  double base_score = 0.0;
  double learning_rate = 0.1;
  features::FeatureSchema schema = features::FeatureSchema::standard();
  features::CategoryDictionary dictionary;
  std::vector<RegressionTree> trees;
  std::vector<double> feature_gains;  // per schema column, unnormalized
  std::vector<double> training_rmse;  // after each retained tree
  GbrtConfig config;

  double predict_row(std::span<const double> row) const;
  // Prediction using only the first `tree_count` trees.
  double predict_row(std::span<const double> row, std::size_t tree_count) const;
};

// Stagewise squared-error boosting with leaf-wise tree growth over
// histogram bins. Boosting stops early only when a tree finds no
// admissible split. Throws kInsufficientData when rows < 2 *
// min_samples_per_leaf, kInvalidArgument on a label count mismatch.
GbrtModel train(const features::FeatureMatrix& features, std::span<const double> labels, const GbrtConfig& config);

// Throws kSchemaMismatch when the matrix schema or category dictionary
// differs from the model's.
std::vector<double> predict(const GbrtModel& model, const features::FeatureMatrix& features);

struct FeatureImportance {
  std::string name;
  double importance = 0.0;  // total gain / max total gain
};

// Descending by importance; ties keep schema order.
std::vector<FeatureImportance> feature_importance(const GbrtModel& model);

nlohmann::ordered_json to_json(const GbrtModel& model);
GbrtModel model_from_json(const nlohmann::json& j);
void save_model(const GbrtModel& model, const std::filesystem::path& path);
GbrtModel load_model(const std::filesystem::path& path);

}  // namespace engage::gbrt
