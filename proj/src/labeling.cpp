#include "trajlabel/labeling.hpp"

#include "trajlabel/dataset.hpp"

namespace trajlabel {

RewardSeries label_raw(const Trajectory& agent, const Trajectory& expert,
                       const LabelParams& params) {
  switch (params.method) {
    case Method::OT:
      return ot_reward(agent, expert, params.metric, params.sinkhorn);
    case Method::TemporalOT:
      return temporal_ot_reward(agent, expert, params.metric,
                                params.context_len, params.mask_halfwidth,
                                params.sinkhorn, params.lenient_lengths);
    case Method::MinDist:
      return min_dist_reward(agent, expert, params.metric);
    case Method::SegMatch:
      return seg_match_reward(agent, expert, params.metric);
    case Method::SegWindow:
      return seg_window_reward(agent, expert, params.metric,
                               params.window_halfwidth, params.context_len);
    case Method::Unified:
      return unified_window_reward(agent, expert, params.metric, params.window);
  }
  throw std::invalid_argument("unknown method");
}

RewardSeries label_squashed(const Trajectory& agent, const Trajectory& expert,
                            const LabelParams& params) {
  RewardSeries raw = label_raw(agent, expert, params);
  switch (params.squash_mode) {
    case SquashMode::None:
      return raw;
    case SquashMode::Exponential:
      return squash(raw, params.squash_params);
    case SquashMode::Transport:
      return squash_transport(raw, agent.length(), agent.dim());
  }
  throw std::invalid_argument("unknown squash mode");
}

RewardSeries label_best_expert(const Trajectory& agent,
                               const std::vector<Trajectory>& experts,
                               const LabelParams& params) {
  if (experts.empty()) {
    throw std::invalid_argument("label_best_expert needs at least one expert");
  }
  std::vector<RewardSeries> candidates;
  candidates.reserve(experts.size());
  for (const Trajectory& expert : experts) {
    candidates.push_back(label_squashed(agent, expert, params));
  }
  return candidates[select_best_expert(candidates)];
}

nlohmann::json params_to_json(const LabelParams& params) {
  nlohmann::json j;
  j["method"] = to_string(params.method);
  j["metric"] = to_string(params.metric);
  j["seed"] = params.seed;
  switch (params.squash_mode) {
    case SquashMode::None:
      j["squash"] = "none";
      break;
    case SquashMode::Exponential:
      j["squash"] = "exponential";
      j["alpha"] = params.squash_params.alpha;
      j["beta"] = params.squash_params.beta;
      break;
    case SquashMode::Transport:
      j["squash"] = "transport";
      break;
  }
  switch (params.scale_mode) {
    case ScaleMode::None:
      j["scale"] = "none";
      break;
    case ScaleMode::Offline:
      j["scale"] = "offline";
      j["rescale_bias"] = params.rescale_bias;
      j["rescale_span"] = params.rescale_span;
      break;
    case ScaleMode::Online:
      j["scale"] = "online";
      j["online_factor"] = params.online_factor;
      break;
  }
  if (params.method == Method::OT || params.method == Method::TemporalOT) {
    j["epsilon"] = params.sinkhorn.epsilon;
    j["max_iterations"] = params.sinkhorn.max_iterations;
    j["marginal_tolerance"] = params.sinkhorn.marginal_tolerance;
  }
  if (params.method == Method::TemporalOT) {
    j["context_len"] = params.context_len;
    j["mask_halfwidth"] = params.mask_halfwidth;
    j["lenient_lengths"] = params.lenient_lengths;
  }
  if (params.method == Method::SegWindow) {
    j["context_len"] = params.context_len;
    j["window_halfwidth"] = params.window_halfwidth;
  }
  if (params.method == Method::Unified) {
    j["window_back"] = params.window.back;
    j["window_fwd"] = params.window.fwd;
    j["window_stride"] = std::to_string(params.window.stride.num) + "/" +
                         std::to_string(params.window.stride.den);
  }
  return j;
}

std::string config_hash(const LabelParams& params) {
  return fnv1a64_hex(params_to_json(params).dump());
}

}  // namespace trajlabel
