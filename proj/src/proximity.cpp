#include "trajlabel/proximity.hpp"

#include "trajlabel/cost.hpp"
#include "trajlabel/kdtree.hpp"

#include <algorithm>
#include <limits>

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

std::vector<IndexRange> segment_partition(std::int64_t agent_len,
                                          std::int64_t expert_len) {
  if (agent_len < 1 || expert_len < 1) {
    throw std::invalid_argument("segment_partition requires positive lengths");
  }
  const std::int64_t q = expert_len / agent_len;
  const std::int64_t l = expert_len % agent_len;
  std::vector<IndexRange> segments;
  segments.reserve(static_cast<std::size_t>(agent_len));
  for (std::int64_t t = 1; t <= agent_len; ++t) {
    IndexRange r;
    r.lo = (t - 1) * q + 1 + std::min(t - 1, l);
    r.hi = t * q + std::min(t, l);
    segments.push_back(r);
  }
  return segments;
}

std::int64_t floor_scaled(const Rational& stride, std::int64_t t) {
  if (stride.den <= 0) {
    throw std::invalid_argument("window stride denominator must be > 0");
  }
  if (stride.num < 0) {
    throw std::invalid_argument("window stride must be >= 0");
  }
  // num, t >= 0 and den > 0: integer division is already the floor.
  return (stride.num * t) / stride.den;
}

RewardSeries windowed_min_reward(const Trajectory& agent,
                                 const Trajectory& expert, Metric metric,
                                 const std::vector<IndexRange>& windows) {
  check_pair(agent, expert);
  const Index t_len = agent.length();
  const std::int64_t te = expert.length();
  if (static_cast<Index>(windows.size()) != t_len) {
    throw std::invalid_argument("expected one window per agent step (" +
                                std::to_string(t_len) + "), got " +
                                std::to_string(windows.size()));
  }

  RewardSeries series;
  series.values.resize(t_len);
  series.stage = Stage::Raw;
  series.method = Method::Unified;
  for (Index t = 0; t < t_len; ++t) {
    const IndexRange& w = windows[static_cast<std::size_t>(t)];
    std::int64_t lo = std::max<std::int64_t>(1, w.lo);
    std::int64_t hi = std::min<std::int64_t>(te, w.hi);
    if (lo > hi) {
      // Window fell entirely outside the expert's range: compare against the
      // final expert state so every step still receives a reward.
      lo = hi = te;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t j = lo; j <= hi; ++j) {
      best = std::min(best, distance(agent.states.row(t),
                                     expert.states.row(j - 1), metric));
    }
    series.values(t) = -best;
  }
  return series;
}

RewardSeries min_dist_reward(const Trajectory& agent, const Trajectory& expert,
                             Metric metric) {
  check_pair(agent, expert);
  RewardSeries series;
  series.values.resize(agent.length());
  series.stage = Stage::Raw;
  series.method = Method::MinDist;
  for (Index t = 0; t < agent.length(); ++t) {
    double best = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < expert.length(); ++j) {
      best = std::min(best,
                      distance(agent.states.row(t), expert.states.row(j), metric));
    }
    series.values(t) = -best;
  }
  return series;
}

RewardSeries min_dist_reward_kdtree(const Trajectory& agent,
                                    const Trajectory& expert, Metric metric) {
  if (metric != Metric::Euclidean) {
    throw std::invalid_argument(
        "min_dist_reward_kdtree supports the euclidean metric only; use "
        "min_dist_reward for cosine");
  }
  check_pair(agent, expert);
  KdTree tree(expert.states);
  RewardSeries series;
  series.values.resize(agent.length());
  series.stage = Stage::Raw;
  series.method = Method::MinDist;
  for (Index t = 0; t < agent.length(); ++t) {
    series.values(t) = -tree.nearest(agent.states.row(t)).second;
  }
  return series;
}

RewardSeries seg_match_reward(const Trajectory& agent, const Trajectory& expert,
                              Metric metric) {
  check_pair(agent, expert);
  const std::vector<IndexRange> segments =
      segment_partition(agent.length(), expert.length());
  const Index te = expert.length();

  RewardSeries series;
  series.values.resize(agent.length());
  series.stage = Stage::Raw;
  series.method = Method::SegMatch;
  for (Index t = 0; t < agent.length(); ++t) {
    const IndexRange& seg = segments[static_cast<std::size_t>(t)];
    double best = std::numeric_limits<double>::infinity();
    if (seg.empty()) {
      // Steps beyond the expert's horizon measure proximity to its final
      // state.
      best = distance(agent.states.row(t), expert.states.row(te - 1), metric);
    } else {
      for (std::int64_t j = seg.lo; j <= seg.hi; ++j) {
        best = std::min(best, distance(agent.states.row(t),
                                       expert.states.row(j - 1), metric));
      }
    }
    series.values(t) = -best;
  }
  return series;
}

RewardSeries seg_window_reward(const Trajectory& agent,
                               const Trajectory& expert, Metric metric,
                               std::int64_t half_width, int context_len) {
  check_pair(agent, expert);
  if (half_width < 0) {
    throw std::invalid_argument("window half_width must be >= 0");
  }
  if (context_len < 1) {
    throw std::invalid_argument("context_len must be >= 1");
  }
  const Index te = expert.length();

  RewardSeries series;
  series.values.resize(agent.length());
  series.stage = Stage::Raw;
  series.method = Method::SegWindow;
  for (Index t = 0; t < agent.length(); ++t) {
    // 1-based window [t+1-half_width, t+1+half_width] clamped to the expert.
    std::int64_t lo = std::max<std::int64_t>(1, t + 1 - half_width);
    std::int64_t hi = std::min<std::int64_t>(te, t + 1 + half_width);
    if (lo > hi) lo = hi = te;
    double best = std::numeric_limits<double>::infinity();
    for (std::int64_t j = lo; j <= hi; ++j) {
      best = std::min(best, context_cost_entry(agent, expert, metric,
                                               context_len, t, j - 1));
    }
    series.values(t) = -best;
  }
  return series;
}

RewardSeries unified_window_reward(const Trajectory& agent,
                                   const Trajectory& expert, Metric metric,
                                   const WindowSpec& window) {
  if (window.back < 0 || window.fwd < 0) {
    throw std::invalid_argument("window extents must be >= 0");
  }
  std::vector<IndexRange> windows;
  windows.reserve(static_cast<std::size_t>(agent.length()));
  for (std::int64_t t = 1; t <= agent.length(); ++t) {
    const std::int64_t center = floor_scaled(window.stride, t);
    windows.push_back(IndexRange{center - window.back, center + window.fwd});
  }
  RewardSeries series = windowed_min_reward(agent, expert, metric, windows);
  series.method = Method::Unified;
  return series;
}

}  // namespace trajlabel
