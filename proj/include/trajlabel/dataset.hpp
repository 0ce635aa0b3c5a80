#pragma once

#include "trajlabel/types.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trajlabel {

// Datasets are stored as JSON Lines: the first line is a manifest record,
// every following line one trajectory record (see docs/formats.md). Numbers
// are written in shortest round-trip form and object keys are sorted, so
// saving the same dataset twice produces identical bytes.
struct DatasetManifest {
  std::string name;
  std::int64_t state_dim = 0;
  std::int64_t trajectory_count = 0;
  std::vector<std::string> expert_ids;
  Metric distance_metric = Metric::Cosine;
  // Carried through verbatim from whoever created the dataset; labeling
  // copies it from its input rather than reading a clock, so outputs are
  // reproducible byte-for-byte.
  std::string created_at;
  // Labeling provenance (method, resolved parameters, config hash, reward
  // stage). Present exactly when trajectory records carry rewards.
  std::optional<nlohmann::json> label;
};

struct Dataset {
  DatasetManifest manifest;
  std::vector<Trajectory> trajectories;
  // Aligned with `trajectories`; either empty (unlabeled) or one series per
  // trajectory.
  std::vector<RewardSeries> rewards;

  bool labeled() const { return !rewards.empty(); }
};

// Parses and validates a dataset file. Errors carry 1-based line numbers:
// malformed JSON, wrong field types, state rows not matching the manifest
// dimension, expert ids that name no trajectory, duplicate ids, a trajectory
// count that disagrees with the manifest, or rewards without label metadata
// all raise DataError.
Dataset load_dataset(const std::filesystem::path& path);

// Writes manifest + trajectories. Validates consistency first (reward
// lengths, finite values, expert ids, count) and throws DataError rather
// than writing a partial file.
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

struct DatasetStats {
  std::int64_t trajectory_count = 0;
  std::map<std::int64_t, std::int64_t> length_histogram;
  // Populated when the dataset is labeled.
  bool labeled = false;
  double max_return = 0.0;
  double min_return = 0.0;
  double mean_step_reward = 0.0;
  double min_step_reward = 0.0;
  double max_step_reward = 0.0;
  // True when every trajectory has the same return, in which case an offline
  // rescale of this dataset would be undefined.
  bool degenerate_returns = false;
};

DatasetStats dataset_stats(const Dataset& dataset);

// 64-bit FNV-1a of a byte string, rendered as 16 hex digits. Used to
// fingerprint resolved configurations in output provenance.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace trajlabel
