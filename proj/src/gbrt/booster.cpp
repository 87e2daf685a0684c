#include <algorithm>
#include <cmath>
#include <numeric>

#include "engage/error.hpp"
#include "engage/gbrt/binning.hpp"
#include "engage/gbrt/gbrt.hpp"
#include "engage/parallel.hpp"

namespace engage::gbrt {

void GbrtConfig::validate() const {
  if (num_trees < 1) throw Error(ErrorKind::kInvalidConfig, "num_trees must be >= 1");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "learning_rate must lie in (0, 1]");
  }
  if (max_leaves < 2) throw Error(ErrorKind::kInvalidConfig, "max_leaves must be >= 2");
  if (min_samples_per_leaf < 1) throw Error(ErrorKind::kInvalidConfig, "min_samples_per_leaf must be >= 1");
  if (histogram_bins < 2 || histogram_bins > 255) {
    throw Error(ErrorKind::kInvalidConfig, "histogram_bins must lie in [2, 255]");
  }
  if (!(lambda_l2 >= 0.0)) throw Error(ErrorKind::kInvalidConfig, "lambda_l2 must be >= 0");
}

double GbrtModel::predict_row(std::span<const double> row) const { return predict_row(row, trees.size()); }

double GbrtModel::predict_row(std::span<const double> row, std::size_t tree_count) const {
  double p = base_score;
  const std::size_t n = std::min(tree_count, trees.size());
  for (std::size_t t = 0; t < n; ++t) p += learning_rate * trees[t].predict(row);
  return p;
}

namespace {

struct Leaf {
  int node = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  NodeTotals totals;
  std::vector<HistogramBin> hist;
  int best_feature = -1;
  BinSplit best;

  std::size_t size() const { return end - begin; }
};

// Grows one leaf-wise tree on the current residuals.
class TreeGrower {
 public:
  TreeGrower(const BinnedColumns& binned, std::span<const double> residuals, const GbrtConfig& config)
      : binned_(binned), residuals_(residuals), config_(config) {
    offsets_.reserve(binned.bins.size() + 1);
    offsets_.push_back(0);
    for (const auto& b : binned.bins) offsets_.push_back(offsets_.back() + static_cast<std::size_t>(b.num_bins()));
    order_.resize(residuals.size());
    std::iota(order_.begin(), order_.end(), 0u);
  }

  // Returns the tree; leaf_values[r] receives the leaf value of row r.
  RegressionTree grow(std::vector<double>& leaf_values) {
    RegressionTree tree;
    auto& nodes = tree.nodes();

    std::vector<Leaf> leaves;
    Leaf root;
    root.begin = 0;
    root.end = order_.size();
    root.totals = totals_of(root.begin, root.end);
    nodes.push_back(make_node(root.totals));
    build_histogram(root);
    evaluate(root);
    leaves.push_back(std::move(root));

    while (static_cast<int>(leaves.size()) < config_.max_leaves) {
      int pick = -1;
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (!leaves[i].best.valid()) continue;
        if (pick < 0 || leaves[i].best.gain > leaves[pick].best.gain ||
            (leaves[i].best.gain == leaves[pick].best.gain && leaves[i].node < leaves[pick].node)) {
          pick = static_cast<int>(i);
        }
      }
      if (pick < 0) break;
      split_leaf(leaves, static_cast<std::size_t>(pick), nodes);
    }

    leaf_values.assign(residuals_.size(), 0.0);
    for (const auto& leaf : leaves) {
      const double v = nodes[leaf.node].value;
      for (std::size_t i = leaf.begin; i < leaf.end; ++i) leaf_values[order_[i]] = v;
    }
    return tree;
  }

 private:
  NodeTotals totals_of(std::size_t begin, std::size_t end) const {
    NodeTotals t;
    for (std::size_t i = begin; i < end; ++i) {
      const double r = residuals_[order_[i]];
      t.sum += r;
      t.sum_squares += r * r;
    }
    t.count = static_cast<std::uint32_t>(end - begin);
    return t;
  }

  TreeNode make_node(const NodeTotals& t) const {
    TreeNode n;
    n.count = t.count;
    n.value = t.sum / (static_cast<double>(t.count) + config_.lambda_l2);
    return n;
  }

  bool splittable(const Leaf& leaf) const {
    return leaf.size() >= 2 * static_cast<std::size_t>(config_.min_samples_per_leaf);
  }

  void build_histogram(Leaf& leaf) const {
    leaf.hist.assign(offsets_.back(), HistogramBin{});
    parallel_for(binned_.bins.size(), config_.threads, [&](std::size_t f) {
      HistogramBin* h = leaf.hist.data() + offsets_[f];
      const auto& codes = binned_.codes[f];
      for (std::size_t i = leaf.begin; i < leaf.end; ++i) {
        const auto r = order_[i];
        auto& bin = h[codes[r]];
        bin.sum += residuals_[r];
        ++bin.count;
      }
    });
  }

  void evaluate(Leaf& leaf) const {
    leaf.best = BinSplit{};
    leaf.best_feature = -1;
    if (!splittable(leaf)) return;
    const std::size_t nf = binned_.bins.size();
    std::vector<BinSplit> per_feature(nf);
    const SplitConstraints constraints{config_.min_samples_per_leaf, config_.lambda_l2};
    parallel_for(nf, config_.threads, [&](std::size_t f) {
      std::span<const HistogramBin> h(leaf.hist.data() + offsets_[f], offsets_[f + 1] - offsets_[f]);
      per_feature[f] = find_best_split(h, binned_.bins[f].is_categorical(), leaf.totals, constraints);
    });
    // Fixed reduction order: the lowest feature index wins ties.
    for (std::size_t f = 0; f < nf; ++f) {
      if (per_feature[f].valid() && per_feature[f].gain > leaf.best.gain) {
        leaf.best = std::move(per_feature[f]);
        leaf.best_feature = static_cast<int>(f);
      }
    }
  }

  void split_leaf(std::vector<Leaf>& leaves, std::size_t index, std::vector<TreeNode>& nodes) {
    Leaf parent = std::move(leaves[index]);
    const int f = parent.best_feature;
    const auto& bins = binned_.bins[f];
    const auto& codes = binned_.codes[f];

    std::vector<char> left_mask(static_cast<std::size_t>(bins.num_bins()), 0);
    if (bins.is_categorical()) {
      for (auto b : parent.best.left_bins) left_mask[b] = 1;
    } else {
      for (int b = 0; b <= parent.best.threshold_bin; ++b) left_mask[b] = 1;
    }
    const auto mid = std::stable_partition(order_.begin() + static_cast<std::ptrdiff_t>(parent.begin),
                                           order_.begin() + static_cast<std::ptrdiff_t>(parent.end),
                                           [&](std::uint32_t r) { return left_mask[codes[r]] != 0; });
    const auto split_at = static_cast<std::size_t>(mid - order_.begin());

    Leaf left, right;
    left.begin = parent.begin;
    left.end = split_at;
    right.begin = split_at;
    right.end = parent.end;
    left.totals = totals_of(left.begin, left.end);
    right.totals = totals_of(right.begin, right.end);

    TreeNode& pn = nodes[parent.node];
    pn.feature = f;
    pn.gain = parent.best.gain;
    if (bins.is_categorical()) {
      pn.categorical = true;
      for (auto b : parent.best.left_bins) pn.categories.push_back(bins.categories()[b]);
    } else {
      pn.threshold = bins.thresholds()[parent.best.threshold_bin];
    }
    left.node = static_cast<int>(nodes.size());
    nodes.push_back(make_node(left.totals));
    right.node = static_cast<int>(nodes.size());
    nodes.push_back(make_node(right.totals));
    nodes[parent.node].left = left.node;
    nodes[parent.node].right = right.node;

    // Build the smaller child directly and derive the other by subtraction.
    Leaf& small = left.size() <= right.size() ? left : right;
    Leaf& large = left.size() <= right.size() ? right : left;
    if (splittable(left) || splittable(right)) {
      build_histogram(small);
      large.hist = std::move(parent.hist);
      for (std::size_t i = 0; i < large.hist.size(); ++i) {
        large.hist[i].sum -= small.hist[i].sum;
        large.hist[i].count -= small.hist[i].count;
      }
      evaluate(left);
      evaluate(right);
    }

    leaves[index] = std::move(left);
    leaves.push_back(std::move(right));
  }

  const BinnedColumns& binned_;
  std::span<const double> residuals_;
  const GbrtConfig& config_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> order_;
};

BinnedColumns bin_columns(const features::FeatureMatrix& fm, const GbrtConfig& config) {
  BinnedColumns out;
  const std::size_t nf = fm.cols();
  out.bins.resize(nf);
  out.codes.resize(nf);
  parallel_for(nf, config.threads, [&](std::size_t f) {
    const auto col = fm.column(f);
    out.bins[f] = fm.schema[f].kind == features::FeatureKind::kCategorical
                      ? FeatureBins::categorical(col)
                      : FeatureBins::numeric(col, config.histogram_bins);
    auto& codes = out.codes[f];
    codes.resize(col.size());
    for (std::size_t r = 0; r < col.size(); ++r) codes[r] = out.bins[f].bin_of(col[r]);
  });
  return out;
}

double training_rmse(std::span<const double> y, std::span<const double> pred) {
  double sse = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) sse += (y[i] - pred[i]) * (y[i] - pred[i]);
  return std::sqrt(sse / static_cast<double>(y.size()));
}

}  // namespace

GbrtModel train(const features::FeatureMatrix& fm, std::span<const double> labels, const GbrtConfig& config) {
  config.validate();
  if (fm.rows() != labels.size()) throw Error(ErrorKind::kInvalidArgument, "feature rows and labels differ in length");
  if (fm.rows() < 2 * static_cast<std::size_t>(config.min_samples_per_leaf) || fm.rows() < 2) {
    throw Error(ErrorKind::kInsufficientData, "training needs at least 2 * min_samples_per_leaf rows");
  }
  for (double y : labels) {
    if (!std::isfinite(y)) throw Error(ErrorKind::kInvalidArgument, "labels must be finite");
  }

  GbrtModel model;
  model.schema = fm.schema;
  model.dictionary = fm.dictionary;
  model.config = config;
  model.learning_rate = config.learning_rate;
  model.feature_gains.assign(fm.cols(), 0.0);
  model.base_score = std::accumulate(labels.begin(), labels.end(), 0.0) / static_cast<double>(labels.size());

  const bool constant = std::all_of(labels.begin(), labels.end(), [&](double y) { return y == labels.front(); });
  if (constant) {
    model.base_score = labels.front();
    return model;
  }

  const BinnedColumns binned = bin_columns(fm, config);
  std::vector<double> pred(labels.size(), model.base_score);
  std::vector<double> residuals(labels.size());
  std::vector<double> leaf_values;

  for (int t = 0; t < config.num_trees; ++t) {
    for (std::size_t i = 0; i < labels.size(); ++i) residuals[i] = labels[i] - pred[i];
    TreeGrower grower(binned, residuals, config);
    RegressionTree tree = grower.grow(leaf_values);
    if (tree.split_count() == 0) break;

    for (std::size_t i = 0; i < labels.size(); ++i) pred[i] += config.learning_rate * leaf_values[i];
    for (const auto& node : tree.nodes()) {
      if (!node.is_leaf()) model.feature_gains[node.feature] += node.gain;
    }
    model.trees.push_back(std::move(tree));
    model.training_rmse.push_back(training_rmse(labels, pred));
  }
  return model;
}

std::vector<double> predict(const GbrtModel& model, const features::FeatureMatrix& fm) {
  if (fm.schema.hash() != model.schema.hash()) {
    throw Error(ErrorKind::kSchemaMismatch, "feature schema differs from the model's schema");
  }
  if (!(fm.dictionary == model.dictionary)) {
    throw Error(ErrorKind::kSchemaMismatch, "features were encoded with a different category dictionary");
  }
  std::vector<double> out(fm.rows());
  for (std::size_t r = 0; r < fm.rows(); ++r) out[r] = model.predict_row(fm.row(r));
  return out;
}

std::vector<FeatureImportance> feature_importance(const GbrtModel& model) {
  const auto names = model.schema.names();
  const double top = model.feature_gains.empty()
                         ? 0.0
                         : *std::max_element(model.feature_gains.begin(), model.feature_gains.end());
  std::vector<FeatureImportance> out;
  out.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double g = i < model.feature_gains.size() ? model.feature_gains[i] : 0.0;
    out.push_back({names[i], top > 0.0 ? g / top : 0.0});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const FeatureImportance& a, const FeatureImportance& b) { return a.importance > b.importance; });
  return out;
}

}  // namespace engage::gbrt
