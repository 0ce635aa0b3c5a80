#pragma once

#include "trajlabel/types.hpp"

namespace trajlabel {

struct SinkhornConfig {
  double epsilon = 0.01;           // entropic regularization strength
  int max_iterations = 1000;       // full row+column update sweeps
  double marginal_tolerance = 1e-6;  // max-norm bound on marginal violation

  void validate() const;
};

// Result of an entropic transport solve. `plan` has the cost matrix's shape,
// rows summing to 1/T and columns to 1/T_e within the configured tolerance.
struct Coupling {
  Matrix plan;
  double epsilon = 0.0;
  int iterations_used = 0;
};

// Square binary mask restricting a coupling's support to a diagonal band:
// entry (i, j) is feasible iff |i - j| <= half_width. half_width = 0 keeps
// only the diagonal; half_width >= size - 1 keeps everything.
struct MaskMatrix {
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> entries;
  Index half_width = 0;

  static MaskMatrix band(Index size, Index half_width);
  Index size() const { return entries.rows(); }
};

// Entropic optimal transport between uniform marginals (1/T rows, 1/T_e
// columns) via log-domain Sinkhorn iterations. Deterministic: fixed
// initialization, no threading. Throws SolverError when the iteration limit
// is reached before both marginals are within tolerance, or when the solve
// degenerates numerically (the message then suggests a larger epsilon).
Coupling sinkhorn(const Matrix& cost, const SinkhornConfig& config);

// Same solve restricted to a support mask: excluded entries are exact zeros
// in the returned plan (they never enter the kernel). The mask must be
// square and match the cost's shape, and every row and column needs at least
// one feasible entry. half_width = 0 short-circuits to the only feasible
// point, the uniform diagonal.
Coupling masked_sinkhorn(const Matrix& cost, const MaskMatrix& mask,
                         const SinkhornConfig& config);

// Generalized band solve for a T x T_e cost where row i's feasible columns
// are those within half_width of round(i * T_e / T). Used for unequal-length
// alignment; equal lengths reduce to masked_sinkhorn's band.
Coupling stretched_band_sinkhorn(const Matrix& cost, Index half_width,
                                 const SinkhornConfig& config);

// <C, P>: total transported cost of a plan.
double transport_cost(const Matrix& cost, const Matrix& plan);

}  // namespace trajlabel
