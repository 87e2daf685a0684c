#include "engage/gbrt/tree.hpp"

#include <algorithm>

namespace engage::gbrt {

bool TreeNode::goes_left(double x) const {
  if (categorical) return std::binary_search(categories.begin(), categories.end(), x);
  return x <= threshold;
}

int RegressionTree::leaf_index(std::span<const double> row) const {
  int i = 0;
  while (!nodes_[i].is_leaf()) {
    const auto& n = nodes_[i];
    i = n.goes_left(row[n.feature]) ? n.left : n.right;
  }
  return i;
}

double RegressionTree::predict(std::span<const double> row) const { return nodes_[leaf_index(row)].value; }

std::size_t RegressionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

}  // namespace engage::gbrt
