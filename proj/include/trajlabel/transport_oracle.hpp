#pragma once

#include "trajlabel/types.hpp"

namespace trajlabel {

// Exact optimum of the transport linear program with uniform marginals.
struct ExactTransport {
  Matrix plan;     // optimal coupling, rows sum to 1/T, columns to 1/T_e
  double cost;     // <C, plan>
};

// Solves min_P <C, P> over couplings of the uniform marginals exactly, for
// small instances (rows * cols <= 64). The uniform marginals are scaled by
// T * T_e into integer supplies/demands and the resulting min-cost-flow
// problem is solved by successive shortest paths, so the support and
// objective are exact up to float rounding in cost accumulation, with no
// regularization bias. Intended as an oracle for validating iterative
// solvers, not for production labeling.
ExactTransport exact_transport(const Matrix& cost);

}  // namespace trajlabel
