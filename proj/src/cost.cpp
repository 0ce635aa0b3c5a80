#include "trajlabel/cost.hpp"

namespace trajlabel {

namespace {

void check_pair(const Trajectory& agent, const Trajectory& expert) {
  agent.validate();
  expert.validate();
  if (agent.dim() != expert.dim()) {
    throw std::invalid_argument("state dimension mismatch: agent " +
                                std::to_string(agent.dim()) + ", expert " +
                                std::to_string(expert.dim()));
  }
}

}  // namespace

Matrix pairwise_cost(const Trajectory& agent, const Trajectory& expert,
                     Metric metric) {
  check_pair(agent, expert);
  const Index t = agent.length();
  const Index te = expert.length();
  Matrix cost(t, te);
  for (Index i = 0; i < t; ++i) {
    for (Index j = 0; j < te; ++j) {
      cost(i, j) = distance(agent.states.row(i), expert.states.row(j), metric);
    }
  }
  return cost;
}

Matrix context_cost(const Trajectory& agent, const Trajectory& expert,
                    Metric metric, int context_len) {
  if (context_len < 1) {
    throw std::invalid_argument("context_len must be >= 1");
  }
  const Matrix base = pairwise_cost(agent, expert, metric);
  if (context_len == 1) return base;

  const Index t = base.rows();
  const Index te = base.cols();
  Matrix cost(t, te);
  for (Index i = 0; i < t; ++i) {
    for (Index j = 0; j < te; ++j) {
      double acc = 0.0;
      for (int h = 0; h < context_len; ++h) {
        const Index ih = std::min<Index>(i + h, t - 1);
        const Index jh = std::min<Index>(j + h, te - 1);
        acc += base(ih, jh);
      }
      cost(i, j) = acc / context_len;
    }
  }
  return cost;
}

double context_cost_entry(const Trajectory& agent, const Trajectory& expert,
                          Metric metric, int context_len, Index i, Index j) {
  if (context_len < 1) {
    throw std::invalid_argument("context_len must be >= 1");
  }
  const Index t = agent.length();
  const Index te = expert.length();
  if (i < 0 || i >= t || j < 0 || j >= te) {
    throw std::invalid_argument("context_cost_entry: index out of range");
  }
  double acc = 0.0;
  for (int h = 0; h < context_len; ++h) {
    const Index ih = std::min<Index>(i + h, t - 1);
    const Index jh = std::min<Index>(j + h, te - 1);
    acc += distance(agent.states.row(ih), expert.states.row(jh), metric);
  }
  return acc / context_len;
}

}  // namespace trajlabel
