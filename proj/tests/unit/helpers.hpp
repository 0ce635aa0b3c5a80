#pragma once

#include "trajlabel/types.hpp"

#include <random>
#include <vector>

namespace test_helpers {

using trajlabel::Index;
using trajlabel::StateMatrix;
using trajlabel::Trajectory;

inline Trajectory traj(const std::string& id,
                       const std::vector<std::vector<double>>& rows) {
  StateMatrix states(static_cast<Index>(rows.size()),
                     static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      states(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return trajlabel::make_trajectory(id, std::move(states));
}

// Random trajectory with states in [0.1, 1.1) so cosine is well-defined.
inline Trajectory random_traj(Index length, Index dim, std::mt19937_64& rng,
                              const std::string& id = "t") {
  std::uniform_real_distribution<double> unit(0.1, 1.1);
  StateMatrix states(length, dim);
  for (Index i = 0; i < length; ++i) {
    for (Index j = 0; j < dim; ++j) {
      states(i, j) = unit(rng);
    }
  }
  return trajlabel::make_trajectory(id, std::move(states));
}

inline trajlabel::Matrix random_cost(Index rows, Index cols,
                                     std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  trajlabel::Matrix cost(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      cost(i, j) = unit(rng);
    }
  }
  return cost;
}

}  // namespace test_helpers
