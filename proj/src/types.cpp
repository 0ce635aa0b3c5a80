#include "trajlabel/types.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace trajlabel {

namespace {

std::mutex g_warn_mutex;
WarningHandler g_warn_handler;  // empty -> stderr default

}  // namespace

void set_warning_handler(WarningHandler handler) {
  std::lock_guard<std::mutex> lock(g_warn_mutex);
  g_warn_handler = std::move(handler);
}

void warn(const std::string& message) {
  WarningHandler handler;
  {
    std::lock_guard<std::mutex> lock(g_warn_mutex);
    handler = g_warn_handler;
  }
  if (handler) {
    handler(message);
  } else {
    std::cerr << "warning: " << message << "\n";
  }
}

std::string to_string(Metric m) {
  switch (m) {
    case Metric::Cosine: return "cosine";
    case Metric::Euclidean: return "euclidean";
  }
  throw std::invalid_argument("unknown metric");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::OT: return "ot";
    case Method::TemporalOT: return "temporal-ot";
    case Method::MinDist: return "min-dist";
    case Method::SegMatch: return "seg-match";
    case Method::SegWindow: return "seg-window";
    case Method::Unified: return "unified";
  }
  throw std::invalid_argument("unknown method");
}

std::string to_string(Stage s) {
  switch (s) {
    case Stage::Raw: return "raw";
    case Stage::Squashed: return "squashed";
    case Stage::Rescaled: return "rescaled";
  }
  throw std::invalid_argument("unknown stage");
}

Metric metric_from_string(const std::string& name) {
  if (name == "cosine") return Metric::Cosine;
  if (name == "euclidean") return Metric::Euclidean;
  throw std::invalid_argument("unknown metric '" + name +
                              "' (expected cosine|euclidean)");
}

Method method_from_string(const std::string& name) {
  if (name == "ot") return Method::OT;
  if (name == "temporal-ot") return Method::TemporalOT;
  if (name == "min-dist") return Method::MinDist;
  if (name == "seg-match") return Method::SegMatch;
  if (name == "seg-window") return Method::SegWindow;
  if (name == "unified") return Method::Unified;
  throw std::invalid_argument(
      "unknown method '" + name +
      "' (expected ot|temporal-ot|min-dist|seg-match|seg-window|unified)");
}

Stage stage_from_string(const std::string& name) {
  if (name == "raw") return Stage::Raw;
  if (name == "squashed") return Stage::Squashed;
  if (name == "rescaled") return Stage::Rescaled;
  throw std::invalid_argument("unknown reward stage '" + name + "'");
}

void Trajectory::validate() const {
  if (states.rows() < 1) {
    throw DataError("trajectory '" + id + "' has no states");
  }
  if (states.cols() < 1) {
    throw DataError("trajectory '" + id + "' has zero state dimension");
  }
  if (!states.allFinite()) {
    throw DataError("trajectory '" + id + "' contains non-finite state values");
  }
  if (actions) {
    if (actions->rows() != states.rows()) {
      throw DataError("trajectory '" + id + "' has " +
                      std::to_string(actions->rows()) + " action rows for " +
                      std::to_string(states.rows()) + " states");
    }
    if (!actions->allFinite()) {
      throw DataError("trajectory '" + id + "' contains non-finite action values");
    }
  }
}

Trajectory make_trajectory(std::string id, StateMatrix states,
                           std::optional<StateMatrix> actions) {
  Trajectory t{std::move(id), std::move(states), std::move(actions)};
  t.validate();
  return t;
}

}  // namespace trajlabel
