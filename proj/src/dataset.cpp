#include "trajlabel/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace trajlabel {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw DataError(message, line);
}

const json& require_field(const json& record, const char* key,
                          std::size_t line) {
  auto it = record.find(key);
  if (it == record.end()) {
    fail(line, std::string("missing required field '") + key + "'");
  }
  return *it;
}

std::string require_string(const json& record, const char* key,
                           std::size_t line) {
  const json& value = require_field(record, key, line);
  if (!value.is_string()) {
    fail(line, std::string("field '") + key + "' must be a string");
  }
  return value.get<std::string>();
}

std::int64_t require_int(const json& record, const char* key,
                         std::size_t line) {
  const json& value = require_field(record, key, line);
  if (!value.is_number_integer()) {
    fail(line, std::string("field '") + key + "' must be an integer");
  }
  return value.get<std::int64_t>();
}

// Parses a [[row], [row], ...] matrix with a fixed column count.
StateMatrix parse_matrix(const json& value, std::int64_t expected_cols,
                         const char* key, std::size_t line) {
  if (!value.is_array() || value.empty()) {
    fail(line, std::string("field '") + key + "' must be a non-empty array of rows");
  }
  const std::size_t rows = value.size();
  StateMatrix m(static_cast<Index>(rows), static_cast<Index>(expected_cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = value[i];
    if (!row.is_array() ||
        row.size() != static_cast<std::size_t>(expected_cols)) {
      fail(line, std::string("field '") + key + "' row " + std::to_string(i) +
                     " must have " + std::to_string(expected_cols) +
                     " entries");
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_number()) {
        fail(line, std::string("field '") + key + "' row " +
                       std::to_string(i) + " entry " + std::to_string(j) +
                       " must be a number");
      }
      m(static_cast<Index>(i), static_cast<Index>(j)) = row[j].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const StateMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void validate_dataset(const Dataset& dataset) {
  const DatasetManifest& manifest = dataset.manifest;
  if (manifest.state_dim < 1) {
    throw DataError("manifest state_dim must be >= 1");
  }
  if (manifest.trajectory_count !=
      static_cast<std::int64_t>(dataset.trajectories.size())) {
    throw DataError("manifest trajectory_count (" +
                    std::to_string(manifest.trajectory_count) +
                    ") does not match trajectory records (" +
                    std::to_string(dataset.trajectories.size()) + ")");
  }
  if (!dataset.rewards.empty() &&
      dataset.rewards.size() != dataset.trajectories.size()) {
    throw DataError("reward series count does not match trajectory count");
  }
  if (!dataset.rewards.empty() && !manifest.label.has_value()) {
    throw DataError("labeled dataset is missing label metadata");
  }

  std::set<std::string> ids;
  for (std::size_t i = 0; i < dataset.trajectories.size(); ++i) {
    const Trajectory& t = dataset.trajectories[i];
    t.validate();
    if (t.dim() != manifest.state_dim) {
      throw DataError("trajectory '" + t.id + "' has state dimension " +
                      std::to_string(t.dim()) + ", manifest says " +
                      std::to_string(manifest.state_dim));
    }
    if (!ids.insert(t.id).second) {
      throw DataError("duplicate trajectory id '" + t.id + "'");
    }
    if (!dataset.rewards.empty()) {
      const RewardSeries& r = dataset.rewards[i];
      if (r.length() != t.length()) {
        throw DataError("trajectory '" + t.id + "' has " +
                        std::to_string(t.length()) + " states but " +
                        std::to_string(r.length()) + " rewards");
      }
      if (!r.values.allFinite()) {
        throw DataError("trajectory '" + t.id + "' has non-finite rewards");
      }
    }
  }
  for (const std::string& expert : manifest.expert_ids) {
    if (ids.find(expert) == ids.end()) {
      throw DataError("expert id '" + expert + "' names no trajectory");
    }
  }
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path.string() + "' for reading");
  }

  Dataset dataset;
  std::string text;
  std::size_t line_no = 0;
  bool have_manifest = false;
  Stage reward_stage = Stage::Raw;
  Method reward_method = Method::MinDist;

  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) {
      // Only a trailing newline is tolerated.
      if (in.peek() == std::char_traits<char>::eof()) break;
      fail(line_no, "blank line inside dataset");
    }
    json record;
    try {
      record = json::parse(text);
    } catch (const json::exception& e) {
      // parse_error for malformed text, out_of_range for number overflow.
      fail(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object()) {
      fail(line_no, "each line must be a JSON object");
    }
    const std::string type = require_string(record, "type", line_no);

    if (!have_manifest) {
      if (type != "manifest") {
        fail(line_no, "first line must be the manifest record");
      }
      DatasetManifest& m = dataset.manifest;
      m.name = require_string(record, "name", line_no);
      m.state_dim = require_int(record, "state_dim", line_no);
      if (m.state_dim < 1) fail(line_no, "state_dim must be >= 1");
      m.trajectory_count = require_int(record, "trajectory_count", line_no);
      if (m.trajectory_count < 0) fail(line_no, "trajectory_count must be >= 0");
      try {
        m.distance_metric = metric_from_string(
            require_string(record, "distance_metric", line_no));
      } catch (const std::invalid_argument& e) {
        fail(line_no, e.what());
      }
      m.created_at = require_string(record, "created_at", line_no);
      const json& experts = require_field(record, "expert_ids", line_no);
      if (!experts.is_array()) {
        fail(line_no, "expert_ids must be an array of trajectory ids");
      }
      for (const json& e : experts) {
        if (!e.is_string()) fail(line_no, "expert_ids entries must be strings");
        m.expert_ids.push_back(e.get<std::string>());
      }
      if (record.contains("label")) {
        const json& label = record["label"];
        if (!label.is_object()) fail(line_no, "label must be an object");
        m.label = label;
        try {
          reward_stage = stage_from_string(
              label.value("stage", std::string("raw")));
          reward_method = method_from_string(
              label.value("method", std::string("min-dist")));
        } catch (const std::invalid_argument& e) {
          fail(line_no, e.what());
        } catch (const json::exception& e) {
          fail(line_no, std::string("bad label metadata: ") + e.what());
        }
      }
      have_manifest = true;
      continue;
    }

    if (type != "trajectory") {
      fail(line_no, "unexpected record type '" + type + "'");
    }
    if (static_cast<std::int64_t>(dataset.trajectories.size()) >=
        dataset.manifest.trajectory_count) {
      fail(line_no, "more trajectory records than manifest trajectory_count");
    }

    Trajectory t;
    t.id = require_string(record, "id", line_no);
    t.states = parse_matrix(require_field(record, "states", line_no),
                            dataset.manifest.state_dim, "states", line_no);
    if (record.contains("actions")) {
      const json& actions = record["actions"];
      if (!actions.is_array() || actions.empty() || !actions[0].is_array()) {
        fail(line_no, "actions must be a non-empty array of rows");
      }
      t.actions = parse_matrix(
          actions, static_cast<std::int64_t>(actions[0].size()), "actions",
          line_no);
    }

    if (record.contains("rewards")) {
      if (!dataset.manifest.label.has_value()) {
        fail(line_no, "rewards present but the manifest has no label metadata");
      }
      const json& rewards = record["rewards"];
      if (!rewards.is_array() || rewards.size() != static_cast<std::size_t>(
                                                       t.states.rows())) {
        fail(line_no, "rewards must be an array with one entry per state");
      }
      RewardSeries series;
      series.values.resize(static_cast<Index>(rewards.size()));
      for (std::size_t k = 0; k < rewards.size(); ++k) {
        if (!rewards[k].is_number()) {
          fail(line_no, "rewards entry " + std::to_string(k) +
                            " must be a number");
        }
        series.values(static_cast<Index>(k)) = rewards[k].get<double>();
      }
      series.stage = reward_stage;
      series.method = reward_method;
      dataset.rewards.push_back(std::move(series));
    } else if (!dataset.rewards.empty()) {
      fail(line_no, "dataset mixes labeled and unlabeled trajectories");
    }

    try {
      t.validate();
    } catch (const DataError& e) {
      fail(line_no, e.what());
    }
    dataset.trajectories.push_back(std::move(t));
    if (!dataset.rewards.empty() &&
        dataset.rewards.size() != dataset.trajectories.size()) {
      fail(line_no, "dataset mixes labeled and unlabeled trajectories");
    }
  }

  if (!have_manifest) {
    throw DataError("dataset file is empty (no manifest record)");
  }
  try {
    validate_dataset(dataset);
  } catch (const DataError& e) {
    throw DataError(std::string("'") + path.string() + "': " + e.what());
  }
  return dataset;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  validate_dataset(dataset);

  std::ostringstream out;
  const DatasetManifest& m = dataset.manifest;
  json manifest;
  manifest["type"] = "manifest";
  manifest["name"] = m.name;
  manifest["state_dim"] = m.state_dim;
  manifest["trajectory_count"] = m.trajectory_count;
  manifest["expert_ids"] = m.expert_ids;
  manifest["distance_metric"] = to_string(m.distance_metric);
  manifest["created_at"] = m.created_at;
  if (m.label.has_value()) {
    manifest["label"] = *m.label;
  }
  out << manifest.dump() << "\n";

  for (std::size_t i = 0; i < dataset.trajectories.size(); ++i) {
    const Trajectory& t = dataset.trajectories[i];
    json record;
    record["type"] = "trajectory";
    record["id"] = t.id;
    record["states"] = matrix_to_json(t.states);
    if (t.actions.has_value()) {
      record["actions"] = matrix_to_json(*t.actions);
    }
    if (!dataset.rewards.empty()) {
      json rewards = json::array();
      const Vector& v = dataset.rewards[i].values;
      for (Index k = 0; k < v.size(); ++k) rewards.push_back(v(k));
      record["rewards"] = std::move(rewards);
    }
    out << record.dump() << "\n";
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw DataError("cannot open '" + path.string() + "' for writing");
  }
  file << out.str();
  if (!file) {
    throw DataError("failed writing '" + path.string() + "'");
  }
}

DatasetStats dataset_stats(const Dataset& dataset) {
  DatasetStats stats;
  stats.trajectory_count =
      static_cast<std::int64_t>(dataset.trajectories.size());
  for (const Trajectory& t : dataset.trajectories) {
    ++stats.length_histogram[static_cast<std::int64_t>(t.length())];
  }
  if (!dataset.labeled()) return stats;

  stats.labeled = true;
  stats.max_return = -std::numeric_limits<double>::infinity();
  stats.min_return = std::numeric_limits<double>::infinity();
  stats.min_step_reward = std::numeric_limits<double>::infinity();
  stats.max_step_reward = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  std::int64_t steps = 0;
  for (const RewardSeries& series : dataset.rewards) {
    const double ret = series.total();
    stats.max_return = std::max(stats.max_return, ret);
    stats.min_return = std::min(stats.min_return, ret);
    stats.min_step_reward =
        std::min(stats.min_step_reward, series.values.minCoeff());
    stats.max_step_reward =
        std::max(stats.max_step_reward, series.values.maxCoeff());
    total += series.values.sum();
    steps += series.length();
  }
  stats.mean_step_reward = total / static_cast<double>(steps);
  stats.degenerate_returns = (stats.max_return == stats.min_return);
  return stats;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;  // FNV-1a offset basis
  for (unsigned char c : bytes) {
    hash ^= static_cast<std::uint64_t>(c);
    hash *= 0x100000001b3ull;  // FNV-1a prime
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

}  // namespace trajlabel
