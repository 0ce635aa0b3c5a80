#include "trajlabel/postprocess.hpp"

#include <cmath>
#include <limits>

namespace trajlabel {

namespace {

void require_stage(const RewardSeries& series, Stage expected,
                   const char* operation) {
  if (series.stage != expected) {
    throw std::logic_error(std::string(operation) + " expects stage '" +
                           to_string(expected) + "' input, got '" +
                           to_string(series.stage) + "'");
  }
}

}  // namespace

RewardSeries squash(const RewardSeries& raw, const SquashParams& params) {
  require_stage(raw, Stage::Raw, "squash");
  if (!(params.alpha > 0.0)) {
    throw std::invalid_argument("squash alpha must be > 0");
  }
  RewardSeries out;
  out.values = params.alpha * (params.beta * raw.values.array()).exp();
  out.stage = Stage::Squashed;
  out.method = raw.method;
  return out;
}

RewardSeries squash_transport(const RewardSeries& raw, std::int64_t episode_len,
                              std::int64_t state_dim) {
  require_stage(raw, Stage::Raw, "squash_transport");
  if (episode_len < 1) {
    throw std::invalid_argument("episode_len must be >= 1");
  }
  if (state_dim < 1) {
    throw std::invalid_argument("state_dim must be >= 1");
  }
  RewardSeries out;
  out.values =
      5.0 * (5.0 * static_cast<double>(episode_len) * raw.values.array() /
             static_cast<double>(state_dim))
                .exp();
  out.stage = Stage::Squashed;
  out.method = raw.method;
  return out;
}

std::pair<std::vector<RewardSeries>, RescaleParams> offline_rescale(
    const std::vector<RewardSeries>& squashed, double bias, double span) {
  if (squashed.size() < 2) {
    throw DataError("offline rescale needs at least two trajectories");
  }
  if (!(span > 0.0)) {
    throw std::invalid_argument("rescale span must be > 0");
  }

  RescaleParams params;
  params.bias = bias;
  params.span = span;
  params.max_return = -std::numeric_limits<double>::infinity();
  params.min_return = std::numeric_limits<double>::infinity();
  for (const RewardSeries& series : squashed) {
    require_stage(series, Stage::Squashed, "offline_rescale");
    const double ret = series.total();
    params.max_return = std::max(params.max_return, ret);
    params.min_return = std::min(params.min_return, ret);
  }
  if (params.max_return == params.min_return) {
    throw DataError(
        "offline rescale is undefined when every trajectory has the same "
        "return");
  }
  params.scale = span / (params.max_return - params.min_return);

  std::vector<RewardSeries> out;
  out.reserve(squashed.size());
  for (const RewardSeries& series : squashed) {
    RewardSeries scaled;
    scaled.values = params.scale * series.values.array() + bias;
    scaled.stage = Stage::Rescaled;
    scaled.method = series.method;
    out.push_back(std::move(scaled));
  }
  return {std::move(out), params};
}

void freeze_online_scale(OnlineScale& state, const RewardSeries& first_episode) {
  require_stage(first_episode, Stage::Squashed, "freeze_online_scale");
  if (state.frozen) {
    throw std::logic_error(
        "online scale is already frozen; it is set once from the first "
        "episode");
  }
  if (!(state.factor > 0.0)) {
    throw std::invalid_argument("online scale factor must be > 0");
  }
  const double mass = first_episode.values.array().abs().sum();
  if (mass == 0.0) {
    throw DataError(
        "online scale is undefined for an all-zero first episode");
  }
  state.scale = state.factor / mass;
  state.frozen = true;
}

RewardSeries apply_online_scale(const OnlineScale& state,
                                const RewardSeries& episode) {
  require_stage(episode, Stage::Squashed, "apply_online_scale");
  if (!state.frozen) {
    throw std::logic_error("online scale has not been frozen yet");
  }
  RewardSeries out;
  out.values = state.scale * episode.values;
  out.stage = Stage::Rescaled;
  out.method = episode.method;
  return out;
}

std::size_t select_best_expert(const std::vector<RewardSeries>& candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("select_best_expert needs at least one series");
  }
  std::size_t best = 0;
  double best_total = candidates[0].total();
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double total = candidates[i].total();
    if (total > best_total) {
      best_total = total;
      best = i;
    }
  }
  return best;
}

}  // namespace trajlabel
