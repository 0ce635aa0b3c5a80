#pragma once

#include "trajlabel/types.hpp"

#include <cstdint>
#include <vector>

namespace trajlabel {

// Exponential squash r -> alpha * exp(beta * r). Raw proximity/transport
// rewards are <= 0, so squashed values land in (0, alpha].
struct SquashParams {
  double alpha = 1.0;
  double beta = 1.0;
};

// Input must be stage Raw; output is stage Squashed.
RewardSeries squash(const RewardSeries& raw, const SquashParams& params);

// Squash used with transport rewards on long episodes: r ->
// 5 * exp(5 * episode_len * r / state_dim). Folding the episode length into
// the exponent keeps the scale comparable across horizons, since transport
// rewards shrink like 1/T.
RewardSeries squash_transport(const RewardSeries& raw, std::int64_t episode_len,
                              std::int64_t state_dim);

// Affine rescale fitted on a full dataset: scale = span / (max_return -
// min_return) over the squashed per-trajectory returns, then
// r -> scale * r + bias for every step.
struct RescaleParams {
  double scale = 1.0;
  double bias = 0.0;
  double max_return = 0.0;
  double min_return = 0.0;
  double span = 1000.0;
};

// All inputs must be stage Squashed and there must be at least two
// trajectories with distinct returns (otherwise DataError). Outputs are
// stage Rescaled.
std::pair<std::vector<RewardSeries>, RescaleParams> offline_rescale(
    const std::vector<RewardSeries>& squashed, double bias,
    double span = 1000.0);

// Online variant: the scale is frozen from the first episode seen,
//
//   scale = factor / sum_t |r_t|,
//
// and reused verbatim afterwards so the reward function does not drift
// mid-training.
struct OnlineScale {
  double factor = 10.0;
  bool frozen = false;
  double scale = 1.0;
};

// Computes and freezes the scale from a stage-Squashed episode; throws
// std::logic_error when called twice and DataError when the episode's
// rewards sum to zero absolute mass.
void freeze_online_scale(OnlineScale& state, const RewardSeries& first_episode);

// Multiplies a stage-Squashed episode by the frozen scale; stage moves to
// Rescaled.
RewardSeries apply_online_scale(const OnlineScale& state,
                                const RewardSeries& episode);

// Index of the series with the highest total reward; ties break to the
// lowest index. Used to pick which expert demonstration to align against.
std::size_t select_best_expert(const std::vector<RewardSeries>& candidates);

}  // namespace trajlabel
