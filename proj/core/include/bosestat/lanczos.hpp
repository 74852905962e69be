#pragma once

// Deterministic restarted Lanczos for the lowest eigenpair of a sparse
// Hermitian operator, plus the packaged ground-state result.

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bosestat/torus.hpp"

namespace bosestat::qsim {

// Distinct type so callers can map non-convergence to its own exit path.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXcd vector;
  double residual = 0.0;  // ||H x - value x||
  int restarts = 0;
};

// Lowest eigenpair with a fixed all-ones start vector and full
// reorthogonalization. Throws ConvergenceError carrying the last residual
// if the restart cap is hit before the tolerance.
EigenPair lowest_eigenpair(const SparseMatrix& h, double tol = 1e-10,
                           int max_restarts = 400, int block_size = 48);

struct GroundStateResult {
  double energy = 0.0;
  Eigen::VectorXcd state;
  double residual = 0.0;
  Eigen::MatrixXcd gamma1;
};

GroundStateResult ground_state(const ModeOperator& op);

}  // namespace bosestat::qsim
