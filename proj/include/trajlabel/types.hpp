#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace trajlabel {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Row-major storage so a single state (one row) is a contiguous slice.
using StateMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Metric { Cosine, Euclidean };

enum class Method { OT, TemporalOT, MinDist, SegMatch, SegWindow, Unified };

// Reward series move Raw -> Squashed -> Rescaled; each post-processing step
// checks the stage of its input so pipelines cannot be applied out of order
// or twice.
enum class Stage { Raw, Squashed, Rescaled };

std::string to_string(Metric m);
std::string to_string(Method m);
std::string to_string(Stage s);
Metric metric_from_string(const std::string& name);
Method method_from_string(const std::string& name);
Stage stage_from_string(const std::string& name);

// Raised for malformed datasets / files. `line` is 1-based when the error
// is tied to a specific input line, 0 otherwise.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Raised when an iterative solver fails (non-convergence, numeric blow-up).
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

// Non-fatal diagnostics (e.g. degenerate inputs handled by convention) go
// through this hook; default writes "warning: ..." to stderr. Tests may
// install a capture handler.
using WarningHandler = std::function<void(const std::string&)>;
void set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

// A state trajectory: T rows of d-dimensional states, optional action rows
// aligned 1:1 with states. Actions are carried for io round-trips only; no
// reward method reads them.
struct Trajectory {
  std::string id;
  StateMatrix states;
  std::optional<StateMatrix> actions;

  Index length() const { return states.rows(); }
  Index dim() const { return states.cols(); }

  // Throws DataError when empty, dimension-less, non-finite, or when the
  // action rows do not match the state rows.
  void validate() const;
};

Trajectory make_trajectory(std::string id, StateMatrix states,
                           std::optional<StateMatrix> actions = std::nullopt);

// Per-step rewards for one trajectory plus bookkeeping about how far along
// the post-processing pipeline the values are.
struct RewardSeries {
  Vector values;
  Stage stage = Stage::Raw;
  Method method = Method::MinDist;

  Index length() const { return values.size(); }
  double total() const { return values.sum(); }
};

}  // namespace trajlabel
