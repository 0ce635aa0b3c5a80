#pragma once

#include "trajlabel/labeling.hpp"
#include "trajlabel/types.hpp"

#include <cstdint>
#include <vector>

namespace trajlabel {

// Deterministic gridworld for end-to-end reward checks. States are one-hot
// cell encodings; moves off the edge leave the agent in place, so "press
// into the wall" is how a policy stays at the goal corner. Episodes run a
// fixed number of steps with no terminal state: an agent that has reached
// the goal keeps collecting the goal-proximity reward there, which avoids
// rewarding policies for merely prolonging the episode.
struct GridworldConfig {
  Index width = 8;
  Index height = 8;
  Index start_cell = 0;           // top-left
  Index goal_cell = 63;           // bottom-right
  int step_limit = 40;            // actions per episode
  int episodes = 5000;
  double learning_rate = 0.5;
  double discount = 0.95;
  double exploration = 0.2;       // epsilon-greedy during training
  int probe_interval = 250;       // greedy-success probe cadence for the curve
  std::uint64_t seed = 0;
};

// What drives the tabular learner.
enum class RewardSource {
  Labeled,     // rewards from labeling each episode against the expert demo
  Random,      // uniform noise per step: control, carries no signal
  GoalSparse,  // 1 on arriving at the goal, else 0: environment ground truth
};

// Shortest path start -> goal (right, then down), one-hot encoded.
Trajectory gridworld_expert(const GridworldConfig& config);

struct LearningCurvePoint {
  int episode = 0;
  double labeled_return = 0.0;  // training signal collected that episode
  double greedy_success = 0.0;  // probe: 1 when the greedy policy reaches goal
};

struct ImitationResult {
  double success_rate = 0.0;  // greedy rollouts that visit the goal
  double online_scale = 1.0;  // frozen first-episode scale (Labeled/Random)
  std::vector<LearningCurvePoint> curve;
};

// Trains tabular Q-learning from the chosen reward source and evaluates the
// greedy policy. Labeled/Random sources are squashed + online-scaled the
// same way, so the comparison isolates the labeling signal itself.
ImitationResult gridworld_imitation(const GridworldConfig& config,
                                    RewardSource source,
                                    const LabelParams& params);

}  // namespace trajlabel
