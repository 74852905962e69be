#include "bosestat/lanczos.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace bosestat::qsim {

namespace {

// one Krylov sweep from start; returns the Ritz pair for the lowest value
void lanczos_sweep(const SparseMatrix& h, const Eigen::VectorXcd& start,
                   int block_size, double& value, Eigen::VectorXcd& vector) {
  const Eigen::Index dim = h.rows();
  const int m = int(std::min<Eigen::Index>(block_size, dim));

  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(std::size_t(m));
  Eigen::VectorXd alpha(m), beta(m);

  Eigen::VectorXcd v = start.normalized();
  basis.push_back(v);
  int built = 0;
  for (int k = 0; k < m; ++k) {
    Eigen::VectorXcd w = h * basis[std::size_t(k)];
    alpha[k] = w.dot(basis[std::size_t(k)]).real();
    built = k + 1;

    if (k + 1 == m) break;
    // full reorthogonalization keeps the basis clean at desk scale
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j <= k; ++j) {
        w -= basis[std::size_t(j)].dot(w) * basis[std::size_t(j)];
      }
    }
    const double norm = w.norm();
    if (norm <= 1e-13) break;  // exact invariant subspace
    beta[k] = norm;
    basis.push_back(w / norm);
  }

  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(built, built);
  for (int k = 0; k < built; ++k) {
    tri(k, k) = alpha[k];
    if (k + 1 < built) {
      tri(k, k + 1) = beta[k];
      tri(k + 1, k) = beta[k];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri);
  value = solver.eigenvalues()[0];
  vector = Eigen::VectorXcd::Zero(dim);
  for (int k = 0; k < built; ++k) {
    vector += solver.eigenvectors()(k, 0) * basis[std::size_t(k)];
  }
  vector.normalize();
}

}  // namespace

EigenPair lowest_eigenpair(const SparseMatrix& h, double tol, int max_restarts,
                           int block_size) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("operator must be square and nonempty");
  }

  EigenPair result;
  Eigen::VectorXcd start = Eigen::VectorXcd::Ones(h.rows());
  for (int restart = 0; restart < max_restarts; ++restart) {
    lanczos_sweep(h, start, block_size, result.value, result.vector);
    result.residual = (h * result.vector - result.value * result.vector).norm();
    result.restarts = restart + 1;
    if (result.residual <= tol) return result;
    start = result.vector;
  }
  char msg[128];
  std::snprintf(msg, sizeof(msg),
                "eigensolver did not converge: residual %.3e after %d restarts",
                result.residual, max_restarts);
  throw ConvergenceError(msg);
}

GroundStateResult ground_state(const ModeOperator& op) {
  EigenPair pair = lowest_eigenpair(op.matrix);
  GroundStateResult result;
  result.energy = pair.value;
  result.state = std::move(pair.vector);
  result.residual = pair.residual;
  result.gamma1 = reduced_density(op.basis, result.state);
  return result;
}

}  // namespace bosestat::qsim
