#pragma once

#include "trajlabel/labeling.hpp"
#include "trajlabel/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace trajlabel {

struct TimingRow {
  std::string method;
  Index size = 0;    // trajectory length T (agent and expert)
  Index dim = 0;
  double median_seconds = 0.0;
};

// Wall-clock cost of labeling one random trajectory pair per listed size.
// Each measurement repeats the labeling enough times to dominate timer
// noise (repetition count is calibrated once, at the smallest size, and held
// fixed so ratios between sizes stay comparable), and the row reports the
// median of `samples` such measurements.
std::vector<TimingRow> run_timing(const LabelParams& params,
                                  const std::vector<Index>& sizes, Index dim,
                                  int samples, std::uint64_t seed);

// Appends rows as CSV `method,T,d,median_seconds,run_id`, writing the header
// only when the file does not exist yet.
void append_timing_csv(const std::filesystem::path& path,
                       const std::vector<TimingRow>& rows,
                       const std::string& run_id);

}  // namespace trajlabel
