#pragma once

#include "trajlabel/types.hpp"

#include <algorithm>
#include <cmath>

namespace trajlabel {

// Ground distance between two states.
//
//   cosine:    1 - <x,y> / (|x| |y|), clamped into [0, 2]
//   euclidean: |x - y|_2
//
// If either vector has zero norm under the cosine metric, the distance is
// defined as 1 (maximally dissimilar to everything, including another zero
// vector) and a warning is emitted.
template <typename DerivedA, typename DerivedB>
double distance(const Eigen::MatrixBase<DerivedA>& x,
                const Eigen::MatrixBase<DerivedB>& y, Metric metric) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("distance: dimension mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  }
  switch (metric) {
    case Metric::Euclidean:
      return (x.derived() - y.derived()).norm();
    case Metric::Cosine: {
      const double nx = x.norm();
      const double ny = y.norm();
      if (nx == 0.0 || ny == 0.0) {
        warn("cosine distance of a zero-norm state defined as 1");
        return 1.0;
      }
      const double sim = x.derived().dot(y.derived()) / (nx * ny);
      return std::clamp(1.0 - sim, 0.0, 2.0);
    }
  }
  throw std::invalid_argument("unknown metric");
}

// T x T_e matrix of ground distances between every agent state (rows) and
// every expert state (columns).
Matrix pairwise_cost(const Trajectory& agent, const Trajectory& expert,
                     Metric metric);

// Context-aware cost: each entry averages the ground distance over a forward
// window of `context_len` aligned steps,
//
//   c~(i, j) = (1/k) * sum_{h=0}^{k-1} c(s_{i+h}, e_{j+h})
//
// where indices past the end of either trajectory clamp to the final state.
// context_len = 1 reduces to pairwise_cost.
Matrix context_cost(const Trajectory& agent, const Trajectory& expert,
                    Metric metric, int context_len);

// Single entry of context_cost without materializing the full matrix; i / j
// are 0-based. Used by windowed methods that only touch O(T * window) cells.
double context_cost_entry(const Trajectory& agent, const Trajectory& expert,
                          Metric metric, int context_len, Index i, Index j);

}  // namespace trajlabel
