#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace engage::gbrt {

struct TreeNode {
  int feature = -1;  // -1 for leaves
  bool categorical = false;
  double threshold = 0.0;         // numeric: x <= threshold goes left
  std::vector<double> categories;  // categorical: sorted codes going left
  int left = -1;
  int right = -1;
  double value = 0.0;  // sum(residual) / (count + lambda_l2) at this node
  double gain = 0.0;
  std::uint32_t count = 0;

  bool is_leaf() const noexcept { return feature < 0; }
  bool goes_left(double x) const;
};

class RegressionTree {
 public:
  std::vector<TreeNode>& nodes() noexcept { return nodes_; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }

  // Raw leaf value (not scaled by the learning rate).
  double predict(std::span<const double> row) const;
  // Index of the leaf reached by row.
  int leaf_index(std::span<const double> row) const;
  std::size_t leaf_count() const;
  std::size_t split_count() const { return nodes_.size() - leaf_count(); }

  bool operator==(const RegressionTree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
};

}  // namespace engage::gbrt
