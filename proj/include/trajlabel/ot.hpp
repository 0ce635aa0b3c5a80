#pragma once

#include "trajlabel/sinkhorn.hpp"
#include "trajlabel/types.hpp"

namespace trajlabel {

// Entropic-transport reward: align the agent to the expert with Sinkhorn on
// the pairwise ground cost (uniform marginals), then charge each agent step
// the cost mass its row transports:
//
//   r_i = - sum_j C(i, j) * plan(i, j)
//
// Values are <= 0 and sum to the negated transport objective.
RewardSeries ot_reward(const Trajectory& agent, const Trajectory& expert,
                       Metric metric, const SinkhornConfig& config);

// Transport reward with temporal structure: the cost is context-aware
// (context_len aligned steps per comparison) and the coupling is restricted
// to a diagonal band of half-width mask_halfwidth, which forbids matching
// early agent steps to late expert steps and vice versa.
//
// Strict mode requires equal lengths (the band is only meaningful on a
// square problem) and throws std::invalid_argument otherwise. With
// lenient = true, unequal lengths are accepted by stretching the band
// centers onto the expert's time axis; outputs from that path are flagged
// in file provenance.
RewardSeries temporal_ot_reward(const Trajectory& agent,
                                const Trajectory& expert, Metric metric,
                                int context_len, Index mask_halfwidth,
                                const SinkhornConfig& config,
                                bool lenient = false);

}  // namespace trajlabel
