#ifndef SDGREEN_SOLVER_HPP
#define SDGREEN_SOLVER_HPP

#include <Eigen/Dense>
#include <string>

#include "sdgreen/assembly.hpp"

namespace sdgreen {

struct SolveReport {
  Eigen::VectorXd x;
  double rel_residual = -1.0;
  bool success = false;
  std::string method;
  int iterations = 0;  // refinement rounds (direct) or Krylov iterations
  double seconds = 0.0;
};

/// Solve A x = rhs (or A^T x = rhs with transpose set) to the requested
/// relative residual. Direct sparse LU with iterative refinement, with a
/// Krylov fallback if the factorization fails. On failure the report carries
/// the best iterate and its residual.
SolveReport solve(const SparseSystem& sys, double tol = 1e-10, bool transpose = false);

}  // namespace sdgreen

#endif
