#include "trajlabel/ot.hpp"

#include "trajlabel/cost.hpp"

namespace trajlabel {

namespace {

RewardSeries per_step_transport_reward(const Matrix& cost, const Matrix& plan,
                                       Method method) {
  RewardSeries series;
  series.values = -(cost.array() * plan.array()).rowwise().sum();
  series.stage = Stage::Raw;
  series.method = method;
  return series;
}

}  // namespace

RewardSeries ot_reward(const Trajectory& agent, const Trajectory& expert,
                       Metric metric, const SinkhornConfig& config) {
  const Matrix cost = pairwise_cost(agent, expert, metric);
  const Coupling coupling = sinkhorn(cost, config);
  return per_step_transport_reward(cost, coupling.plan, Method::OT);
}

RewardSeries temporal_ot_reward(const Trajectory& agent,
                                const Trajectory& expert, Metric metric,
                                int context_len, Index mask_halfwidth,
                                const SinkhornConfig& config, bool lenient) {
  if (mask_halfwidth < 0) {
    throw std::invalid_argument("mask_halfwidth must be >= 0");
  }
  if (agent.length() != expert.length() && !lenient) {
    throw std::invalid_argument(
        "temporal transport requires equal trajectory lengths (" +
        std::to_string(agent.length()) + " vs " +
        std::to_string(expert.length()) +
        "); enable lenient mode to stretch the band");
  }
  const Matrix cost = context_cost(agent, expert, metric, context_len);
  Coupling coupling;
  if (agent.length() == expert.length()) {
    const MaskMatrix mask = MaskMatrix::band(agent.length(), mask_halfwidth);
    coupling = masked_sinkhorn(cost, mask, config);
  } else {
    coupling = stretched_band_sinkhorn(cost, mask_halfwidth, config);
  }
  return per_step_transport_reward(cost, coupling.plan, Method::TemporalOT);
}

}  // namespace trajlabel
