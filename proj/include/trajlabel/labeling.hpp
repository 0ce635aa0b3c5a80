#pragma once

#include "trajlabel/ot.hpp"
#include "trajlabel/postprocess.hpp"
#include "trajlabel/proximity.hpp"
#include "trajlabel/types.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace trajlabel {

enum class SquashMode {
  None,        // leave rewards at stage Raw
  Exponential, // alpha * exp(beta * r)
  Transport,   // 5 * exp(5 * T * r / d), for transport methods on long runs
};

enum class ScaleMode {
  None,
  Offline,  // dataset-wide affine rescale of returns
  Online,   // per-run scale frozen from the first episode
};

// Fully resolved labeling configuration. One struct drives the reward
// method, its parameters, and the post-processing pipeline, and is what gets
// fingerprinted into output provenance.
struct LabelParams {
  Method method = Method::SegMatch;
  Metric metric = Metric::Cosine;

  // Transport methods.
  SinkhornConfig sinkhorn;
  int context_len = 3;        // context steps per cost entry (temporal / window)
  std::int64_t mask_halfwidth = 10;  // temporal transport band
  bool lenient_lengths = false;      // allow unequal lengths by band stretching

  // Proximity methods.
  std::int64_t window_halfwidth = 10;  // seg-window
  WindowSpec window;                   // unified

  SquashMode squash_mode = SquashMode::Exponential;
  SquashParams squash_params;  // Exponential mode
  ScaleMode scale_mode = ScaleMode::None;
  double rescale_bias = 0.0;       // Offline mode
  double rescale_span = 1000.0;    // Offline mode
  double online_factor = 10.0;     // Online mode

  std::uint64_t seed = 0;  // recorded in provenance; labeling itself is
                           // deterministic
};

// Raw (pre-squash) rewards for one agent trajectory against one expert.
RewardSeries label_raw(const Trajectory& agent, const Trajectory& expert,
                       const LabelParams& params);

// label_raw + the configured squash (stage Raw or Squashed; dataset-level
// scaling happens in a second pass over all series).
RewardSeries label_squashed(const Trajectory& agent, const Trajectory& expert,
                            const LabelParams& params);

// With several candidate experts, each agent is labeled against the expert
// whose squashed rewards give it the highest return (ties to the lowest
// expert index).
RewardSeries label_best_expert(const Trajectory& agent,
                               const std::vector<Trajectory>& experts,
                               const LabelParams& params);

// Canonical JSON rendering of the resolved configuration (sorted keys) and
// its FNV-1a fingerprint; both are embedded in labeled-file provenance.
nlohmann::json params_to_json(const LabelParams& params);
std::string config_hash(const LabelParams& params);

}  // namespace trajlabel
