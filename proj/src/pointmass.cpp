#include "trajlabel/pointmass.hpp"

#include "trajlabel/stats.hpp"

#include <random>

namespace trajlabel {

PointMassSuite gen_pointmass_suite(const PointMassConfig& config) {
  if (config.horizon < 2 || config.dim < 1 || config.agent_count < 2) {
    throw std::invalid_argument(
        "pointmass suite needs horizon >= 2, dim >= 1, agent_count >= 2");
  }
  if (!(config.noise_step > 0.0)) {
    throw std::invalid_argument("noise_step must be > 0");
  }

  // Straight line from 0.1 to 1.0 in every coordinate; the offset start
  // keeps states away from the zero vector so the cosine metric is
  // well-defined everywhere.
  StateMatrix expert_states(config.horizon, config.dim);
  for (Index t = 0; t < config.horizon; ++t) {
    const double frac =
        static_cast<double>(t) / static_cast<double>(config.horizon - 1);
    expert_states.row(t).setConstant(0.1 + 0.9 * frac);
  }

  PointMassSuite suite;
  suite.expert = make_trajectory("expert", expert_states);

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateMatrix noise(config.horizon, config.dim);
  for (int k = 0; k < config.agent_count; ++k) {
    const double sigma = config.noise_step * static_cast<double>(k);
    StateMatrix states = expert_states;
    // Draw noise even for sigma = 0 so agent k's states do not depend on
    // how many agents precede it.
    for (Index t = 0; t < noise.rows(); ++t) {
      for (Index j = 0; j < noise.cols(); ++j) {
        noise(t, j) = gauss(rng);
      }
    }
    // Rescale the draw so its per-entry RMS is exactly sigma: the realized
    // detour magnitude then matches the advertised noise level instead of
    // merely having it as an expectation, so the true quality ordering holds
    // for every sample, not just on average.
    const double rms =
        std::sqrt(noise.squaredNorm() /
                  static_cast<double>(noise.rows() * noise.cols()));
    if (sigma > 0.0 && rms > 0.0) {
      states += (sigma / rms) * noise;
    }
    suite.agents.push_back(
        make_trajectory("agent-" + std::to_string(k), states));
    suite.noise_levels.push_back(sigma);
  }
  return suite;
}

double ranking_fidelity(const PointMassSuite& suite, const LabelParams& params) {
  std::vector<double> returns;
  std::vector<double> quality;
  returns.reserve(suite.agents.size());
  quality.reserve(suite.agents.size());
  for (std::size_t k = 0; k < suite.agents.size(); ++k) {
    returns.push_back(
        label_squashed(suite.agents[k], suite.expert, params).total());
    quality.push_back(-suite.noise_levels[k]);
  }
  return spearman(returns, quality);
}

}  // namespace trajlabel
