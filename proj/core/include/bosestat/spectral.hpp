#pragma once

// Hermitian observables over a finite mode basis with spectral calculus.
// When an observable acts on torus modes the basis is laid out as
// [zero mode | lattice point 0 | lattice point 1 | ...], so row 0 always
// carries the condensate.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bosestat/lattice.hpp"
#include "bosestat/measure.hpp"

namespace bosestat::bogo {

using Complex = std::complex<double>;

class SpectralObservable {
 public:
  // The matrix must be Hermitian within 1e-12; it is symmetrized before the
  // eigendecomposition.
  explicit SpectralObservable(Eigen::MatrixXcd matrix);

  // Multiplication by cos(2 pi x1) compressed to [zero mode | modes]:
  // entries 1/2 between momenta differing by 2 pi e1.
  static SpectralObservable multiplication_cosine(
      const lattice::MomentumLattice& modes);

  std::size_t dim() const { return std::size_t(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  // ascending eigenvalues and the matching unitary of column eigenvectors
  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const Eigen::MatrixXcd& eigenvectors() const { return evecs_; }

  // f(O) through the spectral theorem
  Eigen::MatrixXcd apply_function(const std::function<double(double)>& f) const;

  // distinct eigenvalues merged within 1e-9, ascending
  const std::vector<double>& spectral_atoms() const { return atoms_; }
  // eigenvalue index -> atom index
  const std::vector<std::size_t>& atom_index() const { return atom_of_; }

 private:
  Eigen::MatrixXcd matrix_;
  Eigen::VectorXd evals_;
  Eigen::MatrixXcd evecs_;
  std::vector<double> atoms_;
  std::vector<std::size_t> atom_of_;
};

// Law of a single outcome in the condensate: weights |<u_k, e0>|^2 collected
// on the spectral atoms.
ot::DiscreteMeasure nu_phi(const SpectralObservable& observable);

}  // namespace bosestat::bogo
