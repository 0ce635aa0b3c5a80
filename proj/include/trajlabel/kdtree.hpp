#pragma once

#include "trajlabel/types.hpp"

#include <utility>
#include <vector>

namespace trajlabel {

// Static kd-tree over a fixed point set for Euclidean nearest-neighbor
// queries. Median split on a cycling axis, leaves hold small buckets, and
// search prunes subtrees whose splitting plane is farther than the best
// distance found. Candidate distances are evaluated with the same expression
// as a brute-force scan, so query results agree with brute force to within
// accumulated rounding (ties may return a different index at the same
// distance).
class KdTree {
 public:
  explicit KdTree(const StateMatrix& points);

  // Returns (index into the point set, Euclidean distance).
  std::pair<Index, double> nearest(
      const Eigen::Ref<const Eigen::RowVectorXd>& query) const;

  Index size() const { return points_.rows(); }

 private:
  struct Node {
    Index begin = 0;
    Index end = 0;       // leaf covers order_[begin, end)
    int axis = -1;       // -1 marks a leaf
    double split = 0.0;
    Index left = -1;
    Index right = -1;
  };

  Index build(Index begin, Index end, int depth);
  void search(Index node, const Eigen::Ref<const Eigen::RowVectorXd>& query,
              Index& best_index, double& best_dist) const;

  StateMatrix points_;
  std::vector<Index> order_;
  std::vector<Node> nodes_;
  Index root_ = -1;
};

}  // namespace trajlabel
