#pragma once

#include "trajlabel/labeling.hpp"
#include "trajlabel/types.hpp"

#include <cstdint>
#include <vector>

namespace trajlabel {

// Synthetic desk-scale task: the expert moves on a straight line through
// state space; agents follow the same line with i.i.d. Gaussian noise whose
// magnitude strictly increases from agent to agent, giving an unambiguous
// ground-truth quality ordering.
struct PointMassConfig {
  Index horizon = 30;      // states per trajectory
  Index dim = 2;
  int agent_count = 10;
  double noise_step = 0.03;  // agent k gets noise magnitude k * noise_step
  std::uint64_t seed = 0;
};

struct PointMassSuite {
  Trajectory expert;
  std::vector<Trajectory> agents;
  std::vector<double> noise_levels;  // strictly increasing, agent 0 is exact
};

PointMassSuite gen_pointmass_suite(const PointMassConfig& config);

// Labels every agent against the expert and returns the Spearman correlation
// between labeled returns and ground-truth quality (negated noise level).
// 1.0 means the reward ranks trajectories exactly as the noise does.
double ranking_fidelity(const PointMassSuite& suite, const LabelParams& params);

}  // namespace trajlabel
