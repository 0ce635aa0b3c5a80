#include "trajlabel/timing.hpp"

#include "trajlabel/stats.hpp"

#include <chrono>
#include <fstream>
#include <random>

namespace trajlabel {

namespace {

Trajectory random_trajectory(Index size, Index dim, std::mt19937_64& rng,
                             const std::string& id) {
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  StateMatrix states(size, dim);
  for (Index i = 0; i < size; ++i) {
    for (Index j = 0; j < dim; ++j) {
      states(i, j) = unit(rng);
    }
  }
  return make_trajectory(id, std::move(states));
}

double time_once(const Trajectory& agent, const Trajectory& expert,
                 const LabelParams& params, int reps) {
  volatile double sink = 0.0;  // keep the labeling from being optimized out
  const auto begin = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) {
    sink = label_raw(agent, expert, params).values.sum();
  }
  const auto end = std::chrono::steady_clock::now();
  (void)sink;
  return std::chrono::duration<double>(end - begin).count() / reps;
}

}  // namespace

std::vector<TimingRow> run_timing(const LabelParams& params,
                                  const std::vector<Index>& sizes, Index dim,
                                  int samples, std::uint64_t seed) {
  if (sizes.empty()) {
    throw std::invalid_argument("run_timing needs at least one size");
  }
  if (samples < 1) {
    throw std::invalid_argument("run_timing needs samples >= 1");
  }

  std::mt19937_64 rng(seed);
  std::vector<std::pair<Trajectory, Trajectory>> instances;
  instances.reserve(sizes.size());
  for (Index size : sizes) {
    if (size < 2) throw std::invalid_argument("timing sizes must be >= 2");
    instances.emplace_back(random_trajectory(size, dim, rng, "agent"),
                           random_trajectory(size, dim, rng, "expert"));
  }

  // Calibrate the repetition count on the smallest instance so each sample
  // spans at least ~20ms; larger instances only take longer.
  std::size_t smallest = 0;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] < sizes[smallest]) smallest = i;
  }
  const double once =
      time_once(instances[smallest].first, instances[smallest].second, params, 1);
  int reps = 1;
  if (once < 0.02) {
    reps = static_cast<int>(std::min(10000.0, 0.02 / std::max(once, 1e-9))) + 1;
  }

  std::vector<TimingRow> rows;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    std::vector<double> measurements;
    measurements.reserve(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
      measurements.push_back(
          time_once(instances[i].first, instances[i].second, params, reps));
    }
    TimingRow row;
    row.method = to_string(params.method);
    row.size = sizes[i];
    row.dim = dim;
    row.median_seconds = median(measurements);
    rows.push_back(std::move(row));
  }
  return rows;
}

void append_timing_csv(const std::filesystem::path& path,
                       const std::vector<TimingRow>& rows,
                       const std::string& run_id) {
  const bool fresh = !std::filesystem::exists(path);
  std::ofstream out(path, std::ios::app);
  if (!out) {
    throw DataError("cannot open '" + path.string() + "' for writing");
  }
  if (fresh) {
    out << "method,T,d,median_seconds,run_id\n";
  }
  for (const TimingRow& row : rows) {
    out << row.method << "," << row.size << "," << row.dim << ","
        << row.median_seconds << "," << run_id << "\n";
  }
}

}  // namespace trajlabel
