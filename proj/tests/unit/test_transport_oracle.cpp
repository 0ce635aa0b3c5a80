#include "trajlabel/transport_oracle.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include "trajlabel/sinkhorn.hpp"

#include <algorithm>
#include <numeric>

using namespace trajlabel;
using test_helpers::random_cost;

TEST_CASE("known 2x2 instances solve to their closed-form optima") {
  Matrix cost(2, 2);
  cost << 0.0, 1.0, 1.0, 0.0;
  ExactTransport result = exact_transport(cost);
  CHECK(result.cost == 0.0);
  Matrix expected(2, 2);
  expected << 0.5, 0.0, 0.0, 0.5;
  CHECK((result.plan.array() == expected.array()).all());

  cost << 0.0, 2.0, 0.0, 2.0;
  result = exact_transport(cost);
  CHECK(result.cost == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("degenerate shapes have forced couplings") {
  Matrix single(1, 1);
  single << 4.25;
  ExactTransport result = exact_transport(single);
  CHECK(result.plan(0, 0) == 1.0);
  CHECK(result.cost == 4.25);

  Matrix row(1, 3);
  row << 3.0, 6.0, 9.0;
  result = exact_transport(row);
  CHECK((result.plan.array() == 1.0 / 3.0).all());
  CHECK(result.cost == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("plans satisfy the uniform marginals exactly") {
  std::mt19937_64 rng(3);
  for (const auto& [rows, cols] :
       std::vector<std::pair<Index, Index>>{{2, 3}, {4, 4}, {8, 8}, {3, 7}}) {
    const Matrix cost = random_cost(rows, cols, rng);
    const ExactTransport result = exact_transport(cost);
    const double row_mass = 1.0 / static_cast<double>(rows);
    const double col_mass = 1.0 / static_cast<double>(cols);
    CHECK((result.plan.rowwise().sum().array() - row_mass).abs().maxCoeff() <=
          1e-12);
    CHECK((result.plan.colwise().sum().array() - col_mass).abs().maxCoeff() <=
          1e-12);
    CHECK((result.plan.array() >= 0.0).all());
  }
}

TEST_CASE("no permutation coupling beats the oracle") {
  std::mt19937_64 rng(5);
  for (int instance = 0; instance < 20; ++instance) {
    const Index n = 5;
    const Matrix cost = random_cost(n, n, rng);
    const ExactTransport result = exact_transport(cost);

    std::vector<Index> perm(n);
    std::iota(perm.begin(), perm.end(), Index{0});
    for (int p = 0; p < 20; ++p) {
      std::shuffle(perm.begin(), perm.end(), rng);
      double perm_cost = 0.0;
      for (Index i = 0; i < n; ++i) {
        perm_cost += cost(i, perm[i]) / static_cast<double>(n);
      }
      CHECK(result.cost <= perm_cost + 1e-12);
    }
    // The independent product coupling is feasible too.
    CHECK(result.cost <=
          cost.sum() / static_cast<double>(n * n) + 1e-12);
  }
}

TEST_CASE("the entropic solve never lands below the exact optimum") {
  std::mt19937_64 rng(7);
  SinkhornConfig config;
  config.epsilon = 0.01;
  config.max_iterations = 100000;
  for (int instance = 0; instance < 10; ++instance) {
    const Matrix cost = random_cost(4, 4, rng);
    const ExactTransport oracle = exact_transport(cost);
    const double entropic = transport_cost(cost, sinkhorn(cost, config).plan);
    CHECK(oracle.cost <= entropic + 1e-9);
  }
}

TEST_CASE("the oracle enforces its size cap and input checks") {
  CHECK_THROWS_AS(exact_transport(Matrix::Zero(9, 8)), std::invalid_argument);
  CHECK_NOTHROW(exact_transport(Matrix::Zero(8, 8)));
  CHECK_THROWS_AS(exact_transport(Matrix()), std::invalid_argument);
  Matrix bad(1, 2);
  bad << 1.0, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(exact_transport(bad), std::invalid_argument);
}
