#include "trajlabel/gridworld.hpp"

#include "trajlabel/postprocess.hpp"

#include <random>

namespace trajlabel {

namespace {

struct Grid {
  Index width;
  Index height;

  Index cells() const { return width * height; }
  Index x_of(Index cell) const { return cell % width; }
  Index y_of(Index cell) const { return cell / width; }
  Index cell_at(Index x, Index y) const { return y * width + x; }

  // Actions: 0 = up, 1 = right, 2 = down, 3 = left; moves off the board
  // leave the cell unchanged.
  Index step(Index cell, int action) const {
    Index x = x_of(cell);
    Index y = y_of(cell);
    switch (action) {
      case 0: y = std::max<Index>(0, y - 1); break;
      case 1: x = std::min<Index>(width - 1, x + 1); break;
      case 2: y = std::min<Index>(height - 1, y + 1); break;
      case 3: x = std::max<Index>(0, x - 1); break;
      default: throw std::invalid_argument("bad action");
    }
    return cell_at(x, y);
  }
};

constexpr int kActions = 4;

void check_config(const GridworldConfig& config) {
  if (config.width < 2 || config.height < 2) {
    throw std::invalid_argument("gridworld must be at least 2x2");
  }
  const Index cells = config.width * config.height;
  if (config.start_cell < 0 || config.start_cell >= cells ||
      config.goal_cell < 0 || config.goal_cell >= cells) {
    throw std::invalid_argument("start/goal cell out of range");
  }
  if (config.start_cell == config.goal_cell) {
    throw std::invalid_argument("start and goal must differ");
  }
  if (config.step_limit < 1 || config.episodes < 1) {
    throw std::invalid_argument("step_limit and episodes must be >= 1");
  }
  if (config.probe_interval < 1) {
    throw std::invalid_argument("probe_interval must be >= 1");
  }
  if (!(config.discount >= 0.0 && config.discount < 1.0)) {
    throw std::invalid_argument("discount must be in [0, 1)");
  }
  if (!(config.learning_rate > 0.0 && config.learning_rate <= 1.0)) {
    throw std::invalid_argument("learning_rate must be in (0, 1]");
  }
  if (!(config.exploration >= 0.0 && config.exploration <= 1.0)) {
    throw std::invalid_argument("exploration must be in [0, 1]");
  }
}

Trajectory cells_to_trajectory(const Grid& grid, const std::vector<Index>& cells,
                               const std::string& id) {
  StateMatrix states = StateMatrix::Zero(static_cast<Index>(cells.size()),
                                         grid.cells());
  for (std::size_t t = 0; t < cells.size(); ++t) {
    states(static_cast<Index>(t), cells[t]) = 1.0;
  }
  return make_trajectory(id, std::move(states));
}

// Greedy action with ties broken to the lowest index.
int greedy_action(const Matrix& q, Index cell) {
  int best = 0;
  for (int a = 1; a < kActions; ++a) {
    if (q(cell, a) > q(cell, best)) best = a;
  }
  return best;
}

// Behavior policy during training: any untried action first (systematic
// coverage without an optimism constant that Q-learning would then have to
// contract away), otherwise the greedy action.
int behavior_action(const Matrix& q, const Eigen::MatrixXi& visits,
                    Index cell) {
  for (int a = 0; a < kActions; ++a) {
    if (visits(cell, a) == 0) return a;
  }
  return greedy_action(q, cell);
}

bool greedy_rollout_reaches_goal(const Grid& grid, const Matrix& q,
                                 const GridworldConfig& config) {
  Index cell = config.start_cell;
  for (int step = 0; step < config.step_limit; ++step) {
    cell = grid.step(cell, greedy_action(q, cell));
    if (cell == config.goal_cell) return true;
  }
  return false;
}

}  // namespace

Trajectory gridworld_expert(const GridworldConfig& config) {
  check_config(config);
  const Grid grid{config.width, config.height};
  std::vector<Index> cells;
  Index x = grid.x_of(config.start_cell);
  Index y = grid.y_of(config.start_cell);
  const Index gx = grid.x_of(config.goal_cell);
  const Index gy = grid.y_of(config.goal_cell);
  cells.push_back(grid.cell_at(x, y));
  while (x != gx) {
    x += (gx > x) ? 1 : -1;
    cells.push_back(grid.cell_at(x, y));
  }
  while (y != gy) {
    y += (gy > y) ? 1 : -1;
    cells.push_back(grid.cell_at(x, y));
  }
  return cells_to_trajectory(grid, cells, "gridworld-expert");
}

ImitationResult gridworld_imitation(const GridworldConfig& config,
                                    RewardSource source,
                                    const LabelParams& params) {
  check_config(config);
  const Grid grid{config.width, config.height};
  const Trajectory expert = gridworld_expert(config);

  Matrix q = Matrix::Zero(grid.cells(), kActions);
  Eigen::MatrixXi visits = Eigen::MatrixXi::Zero(grid.cells(), kActions);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> random_action(0, kActions - 1);

  OnlineScale scale_state;
  ImitationResult result;

  for (int episode = 1; episode <= config.episodes; ++episode) {
    // Exploration decays linearly to zero over the first 80% of training so
    // the closing episodes record pure greedy returns; Monte-Carlo targets
    // under a constant epsilon keep writing exploration-corrupted returns
    // over converged values and the greedy policy never settles.
    const double progress = static_cast<double>(episode - 1) /
                            (0.8 * static_cast<double>(config.episodes));
    const double exploration =
        config.exploration * std::max(0.0, 1.0 - progress);
    std::vector<Index> cells;
    std::vector<int> actions;
    cells.reserve(static_cast<std::size_t>(config.step_limit) + 1);
    cells.push_back(config.start_cell);
    for (int step = 0; step < config.step_limit; ++step) {
      const Index cell = cells.back();
      const int action = (unit(rng) < exploration)
                             ? random_action(rng)
                             : behavior_action(q, visits, cell);
      actions.push_back(action);
      visits(cell, action) += 1;
      cells.push_back(grid.step(cell, action));
    }

    // One reward per visited state, scaled identically across sources so the
    // only difference is where the values come from.
    RewardSeries rewards;
    switch (source) {
      case RewardSource::Labeled: {
        const Trajectory episode_traj =
            cells_to_trajectory(grid, cells, "episode");
        rewards = label_squashed(episode_traj, expert, params);
        break;
      }
      case RewardSource::Random: {
        rewards.values.resize(static_cast<Index>(cells.size()));
        for (Index k = 0; k < rewards.values.size(); ++k) {
          rewards.values(k) = unit(rng);
        }
        rewards.stage = Stage::Squashed;
        rewards.method = params.method;
        break;
      }
      case RewardSource::GoalSparse: {
        rewards.values = Vector::Zero(static_cast<Index>(cells.size()));
        for (std::size_t t = 0; t < cells.size(); ++t) {
          if (cells[t] == config.goal_cell) {
            rewards.values(static_cast<Index>(t)) = 1.0;
          }
        }
        rewards.stage = Stage::Squashed;
        rewards.method = params.method;
        break;
      }
    }

    if (source != RewardSource::GoalSparse) {
      // The sparse source can produce an all-zero first episode, for which
      // the online scale is undefined; it runs unscaled instead.
      if (!scale_state.frozen) freeze_online_scale(scale_state, rewards);
      rewards = apply_online_scale(scale_state, rewards);
    }

    // Off-policy Monte-Carlo targets: each state-action is valued by the
    // discounted return that actually followed it, so one goal-reaching
    // episode values its entire path at once. One-step bootstrapped targets
    // stall here (dense positive rewards let the policy farm a high
    // self-consistent loop value near the start while downstream cells keep
    // near-zero estimates), and unconditional every-visit updates let a
    // single late exploratory step poison the return of every state before
    // it. Updating only while the suffix is greedy keeps the estimates
    // uncorrupted: the exploratory action itself still gets credited with
    // its greedy-tail return, which is how improvements are discovered.
    double suffix_return = 0.0;
    bool suffix_greedy = true;
    for (std::size_t t = actions.size(); t-- > 0;) {
      suffix_return = rewards.values(static_cast<Index>(t) + 1) +
                      config.discount * suffix_return;
      const Index s = cells[t];
      const int a = actions[t];
      if (suffix_greedy) {
        q(s, a) += config.learning_rate * (suffix_return - q(s, a));
      }
      // "Greedy" means the action attains the row maximum, not that it is
      // the tie-broken pick: with ties (all-zero rows early on) every action
      // is on-policy, which is what lets sparse rewards propagate at all.
      suffix_greedy = suffix_greedy && q(s, a) == q.row(s).maxCoeff();
    }

    if (episode % config.probe_interval == 0 || episode == config.episodes) {
      LearningCurvePoint point;
      point.episode = episode;
      point.labeled_return = rewards.total();
      point.greedy_success =
          greedy_rollout_reaches_goal(grid, q, config) ? 1.0 : 0.0;
      result.curve.push_back(point);
    }
  }

  int successes = 0;
  constexpr int kEvalRollouts = 20;
  for (int i = 0; i < kEvalRollouts; ++i) {
    if (greedy_rollout_reaches_goal(grid, q, config)) ++successes;
  }
  result.success_rate = static_cast<double>(successes) / kEvalRollouts;
  result.online_scale = scale_state.frozen ? scale_state.scale : 1.0;
  return result;
}

}  // namespace trajlabel
