#include <fstream>

#include "engage/error.hpp"
#include "engage/gbrt/gbrt.hpp"

namespace engage::gbrt {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "engage-gbrt-v1";

ordered_json node_to_json(const RegressionTree& tree, int index) {
  const TreeNode& n = tree.nodes()[index];
  ordered_json j;
  if (!n.is_leaf()) {
    j["feature"] = n.feature;
    if (n.categorical) {
      j["categories"] = n.categories;
    } else {
      j["threshold"] = n.threshold;
    }
    j["gain"] = n.gain;
  }
  j["value"] = n.value;
  j["count"] = n.count;
  if (!n.is_leaf()) {
    j["left"] = node_to_json(tree, n.left);
    j["right"] = node_to_json(tree, n.right);
  }
  return j;
}

int node_from_json(const json& j, RegressionTree& tree, std::size_t num_features, int depth) {
  if (depth > 4096) throw Error(ErrorKind::kSchemaViolation, "tree too deep");
  if (!j.is_object() || !j.contains("value")) throw Error(ErrorKind::kSchemaViolation, "tree node needs a value");
  const int index = static_cast<int>(tree.nodes().size());
  tree.nodes().emplace_back();
  {
    TreeNode& n = tree.nodes().back();
    n.value = j.at("value").get<double>();
    n.count = j.value("count", 0u);
  }
  if (!j.contains("feature")) return index;

  const int feature = j.at("feature").get<int>();
  if (feature < 0 || static_cast<std::size_t>(feature) >= num_features) {
    throw Error(ErrorKind::kSchemaViolation, "tree node feature index out of range");
  }
  if (!j.contains("left") || !j.contains("right")) {
    throw Error(ErrorKind::kSchemaViolation, "internal tree node needs left and right children");
  }
  {
    TreeNode& n = tree.nodes()[index];
    n.feature = feature;
    n.gain = j.value("gain", 0.0);
    if (j.contains("categories")) {
      n.categorical = true;
      n.categories = j.at("categories").get<std::vector<double>>();
    } else {
      n.threshold = j.at("threshold").get<double>();
    }
  }
  const int left = node_from_json(j.at("left"), tree, num_features, depth + 1);
  const int right = node_from_json(j.at("right"), tree, num_features, depth + 1);
  tree.nodes()[index].left = left;
  tree.nodes()[index].right = right;
  return index;
}

}  // namespace

ordered_json GbrtConfig::to_json() const {
  ordered_json j;
  j["num_trees"] = num_trees;
  j["learning_rate"] = learning_rate;
  j["max_leaves"] = max_leaves;
  j["min_samples_per_leaf"] = min_samples_per_leaf;
  j["histogram_bins"] = histogram_bins;
  j["lambda_l2"] = lambda_l2;
  j["seed"] = seed;
  return j;
}

GbrtConfig GbrtConfig::from_json(const json& j) {
  GbrtConfig c;
  if (!j.is_object()) return c;
  c.num_trees = j.value("num_trees", c.num_trees);
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.max_leaves = j.value("max_leaves", c.max_leaves);
  c.min_samples_per_leaf = j.value("min_samples_per_leaf", c.min_samples_per_leaf);
  c.histogram_bins = j.value("histogram_bins", c.histogram_bins);
  c.lambda_l2 = j.value("lambda_l2", c.lambda_l2);
  c.seed = j.value("seed", c.seed);
  return c;
}

ordered_json to_json(const GbrtModel& m) {
  ordered_json j;
  j["format"] = kFormat;
  j["base_score"] = m.base_score;
  j["learning_rate"] = m.learning_rate;
  j["schema_hash"] = m.schema.hash();
  j["feature_names"] = m.schema.names();
  j["categorical_dictionary"] = m.dictionary.to_json();
  j["config"] = m.config.to_json();
  j["feature_gains"] = m.feature_gains;
  j["training_rmse"] = m.training_rmse;
  ordered_json trees = ordered_json::array();
  for (const auto& t : m.trees) trees.push_back(node_to_json(t, 0));
  j["trees"] = std::move(trees);
  return j;
}

GbrtModel model_from_json(const json& j) {
  try {
    if (!j.is_object() || j.value("format", std::string()) != kFormat) {
      throw Error(ErrorKind::kSchemaViolation, "not an engage GBRT model file");
    }
    GbrtModel m;
    if (j.at("schema_hash").get<std::string>() != m.schema.hash()) {
      throw Error(ErrorKind::kSchemaMismatch, "model was trained on a different feature schema");
    }
    m.base_score = j.at("base_score").get<double>();
    m.learning_rate = j.at("learning_rate").get<double>();
    m.dictionary = features::CategoryDictionary::from_json(j.at("categorical_dictionary"));
    m.config = GbrtConfig::from_json(j.value("config", json::object()));
    m.feature_gains = j.at("feature_gains").get<std::vector<double>>();
    if (m.feature_gains.size() != m.schema.size()) {
      throw Error(ErrorKind::kSchemaViolation, "feature_gains length does not match the schema");
    }
    m.training_rmse = j.value("training_rmse", std::vector<double>{});
    for (const auto& tj : j.at("trees")) {
      RegressionTree tree;
      node_from_json(tj, tree, m.schema.size(), 0);
      m.trees.push_back(std::move(tree));
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kSchemaViolation, std::string("malformed model file: ") + e.what());
  }
}

void save_model(const GbrtModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string() + " for writing");
  out << to_json(model).dump() << '\n';
  if (!out) throw Error(ErrorKind::kIoFailure, "write failed for " + path.string());
}

GbrtModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  auto j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorKind::kSchemaViolation, path.string() + ": malformed JSON");
  return model_from_json(j);
}

}  // namespace engage::gbrt
