#pragma once

#include "trajlabel/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace trajlabel {

// Closed 1-based index range [lo, hi] into the expert trajectory; empty when
// lo > hi.
struct IndexRange {
  std::int64_t lo = 1;
  std::int64_t hi = 0;
  bool empty() const { return lo > hi; }
};

// Splits expert indices 1..expert_len into agent_len consecutive segments.
// With q = expert_len / agent_len and l = expert_len % agent_len, segment t
// (1-based) is
//
//   [ (t-1) q + 1 + min(t-1, l),  t q + min(t, l) ]
//
// so the first l segments get q+1 indices and the rest get q. For
// agent_len > expert_len this yields singletons {t} for t <= expert_len and
// empty ranges afterwards.
std::vector<IndexRange> segment_partition(std::int64_t agent_len,
                                          std::int64_t expert_len);

// Exact rational stride num/den (den > 0) used for window centers; centers
// are computed as floor(num * t / den) in integer arithmetic.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;
};

// Window shape for the unified proximity evaluator: at agent step t the
// feasible expert indices are [floor(stride * t) - back, floor(stride * t) +
// fwd], clamped to [1, expert_len]. back and fwd must be >= 0.
struct WindowSpec {
  std::int64_t back = 0;
  Rational stride{1, 1};
  std::int64_t fwd = 0;
};

std::int64_t floor_scaled(const Rational& stride, std::int64_t t);

// --- Reward methods. All return per-step values r_t <= 0 at stage Raw. ---

// r_t = -min over *all* expert states of the ground distance.
RewardSeries min_dist_reward(const Trajectory& agent, const Trajectory& expert,
                             Metric metric);

// min_dist_reward accelerated by a kd-tree; Euclidean only (cosine callers
// are directed to the brute-force path).
RewardSeries min_dist_reward_kdtree(const Trajectory& agent,
                                    const Trajectory& expert,
                                    Metric metric = Metric::Euclidean);

// r_t = -min over expert segment t of the ground distance, with segments
// from segment_partition; steps whose segment is empty (t > expert_len)
// fall back to the final expert state.
RewardSeries seg_match_reward(const Trajectory& agent, const Trajectory& expert,
                              Metric metric);

// r_t = -min over expert indices [t - half_width, t + half_width] of the
// context-aware cost (see context_cost); windows clamp to the expert range
// and fall back to the final expert state when empty. Requires equal lengths
// unless the window covers the gap; indices compare agent step t to expert
// step t.
RewardSeries seg_window_reward(const Trajectory& agent,
                               const Trajectory& expert, Metric metric,
                               std::int64_t half_width, int context_len = 1);

// r_t = -min over the WindowSpec window of the ground distance. The named
// proximity methods are instances of this evaluator: back = fwd = expert_len
// with stride 0 recovers min_dist, stride 1 with back = fwd = half_width
// recovers seg_window at context 1.
RewardSeries unified_window_reward(const Trajectory& agent,
                                   const Trajectory& expert, Metric metric,
                                   const WindowSpec& window);

// Fully general form: one closed window per agent step (1-based bounds, may
// lie partly outside [1, expert_len]; clamped, empty windows fall back to
// the final expert state). Exposed so callers can express per-step windows
// that no constant (back, stride, fwd) triple can produce, e.g. the segment
// partition.
RewardSeries windowed_min_reward(const Trajectory& agent,
                                 const Trajectory& expert, Metric metric,
                                 const std::vector<IndexRange>& windows);

}  // namespace trajlabel
