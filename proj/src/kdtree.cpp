#include "trajlabel/kdtree.hpp"

#include "trajlabel/cost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trajlabel {

namespace {
constexpr Index kLeafSize = 8;
}

KdTree::KdTree(const StateMatrix& points) : points_(points) {
  if (points_.rows() < 1 || points_.cols() < 1) {
    throw std::invalid_argument("kd-tree needs at least one point");
  }
  if (!points_.allFinite()) {
    throw std::invalid_argument("kd-tree points must be finite");
  }
  order_.resize(static_cast<std::size_t>(points_.rows()));
  std::iota(order_.begin(), order_.end(), Index{0});
  nodes_.reserve(static_cast<std::size_t>(2 * points_.rows() / kLeafSize + 2));
  root_ = build(0, points_.rows(), 0);
}

Index KdTree::build(Index begin, Index end, int depth) {
  const Index node_index = static_cast<Index>(nodes_.size());
  nodes_.emplace_back();
  Node& node = nodes_.back();
  node.begin = begin;
  node.end = end;
  if (end - begin <= kLeafSize) {
    return node_index;
  }

  const int axis = depth % static_cast<int>(points_.cols());
  const Index mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](Index a, Index b) {
                     return points_(a, axis) < points_(b, axis);
                   });
  // Write the fields before recursing: the recursive build calls invalidate
  // the `node` reference by growing nodes_.
  nodes_[node_index].axis = axis;
  nodes_[node_index].split = points_(order_[static_cast<std::size_t>(mid)], axis);
  const Index left = build(begin, mid, depth + 1);
  const Index right = build(mid, end, depth + 1);
  nodes_[node_index].left = left;
  nodes_[node_index].right = right;
  return node_index;
}

void KdTree::search(Index node_index,
                    const Eigen::Ref<const Eigen::RowVectorXd>& query,
                    Index& best_index, double& best_dist) const {
  const Node& node = nodes_[static_cast<std::size_t>(node_index)];
  if (node.axis < 0) {
    for (Index k = node.begin; k < node.end; ++k) {
      const Index p = order_[static_cast<std::size_t>(k)];
      const double d = distance(query, points_.row(p), Metric::Euclidean);
      if (d < best_dist) {
        best_dist = d;
        best_index = p;
      }
    }
    return;
  }

  const double delta = query(node.axis) - node.split;
  const Index near = delta < 0.0 ? node.left : node.right;
  const Index far = delta < 0.0 ? node.right : node.left;
  search(near, query, best_index, best_dist);
  if (std::abs(delta) < best_dist) {
    search(far, query, best_index, best_dist);
  }
}

std::pair<Index, double> KdTree::nearest(
    const Eigen::Ref<const Eigen::RowVectorXd>& query) const {
  if (query.size() != points_.cols()) {
    throw std::invalid_argument("kd-tree query dimension mismatch");
  }
  Index best_index = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  search(root_, query, best_index, best_dist);
  return {best_index, best_dist};
}

}  // namespace trajlabel
