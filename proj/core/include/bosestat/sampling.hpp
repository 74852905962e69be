#pragma once

// Exact sampling of the joint measurement law: the state is rotated into the
// observable's eigenbasis by a chain of two-mode rotations, one occupation
// vector is drawn from the rotated amplitudes, and the outcome multiset is
// expanded in uniformly random order. Also the model states used by the
// experiments: product, quasifree and dressed.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bosestat/fock.hpp"
#include "bosestat/measure.hpp"
#include "bosestat/occupation.hpp"
#include "bosestat/rng.hpp"
#include "bosestat/spectral.hpp"

namespace bosestat::qsim {

using Complex = std::complex<double>;

// Gamma(U) psi for a d x d unitary u acting on the modes of a fixed-total
// basis, computed through a Givens chain; exact up to round-off.
Eigen::VectorXcd rotate_modes(const fock::OccupationBasis& basis,
                              const Eigen::VectorXcd& psi,
                              const Eigen::MatrixXcd& u);

class MeasurementSampler {
 public:
  // psi must be normalized within 1e-9 and live on a fixed-total basis over
  // the observable's modes
  MeasurementSampler(const fock::OccupationBasis& basis,
                     const Eigen::VectorXcd& psi,
                     const bogo::SpectralObservable& observable);

  int n_particles() const { return n_; }
  const std::vector<double>& atoms() const { return atoms_; }

  // counts per spectral atom for one measurement of all N particles
  std::vector<int> draw_counts(rng::Stream& stream) const;

  // the N outcomes in exchangeable (uniformly permuted) order
  std::vector<double> draw(rng::Stream& stream) const;

  // exact single-outcome marginal
  ot::DiscreteMeasure marginal() const;

 private:
  int n_ = 0;
  std::vector<double> atoms_;
  std::vector<std::vector<int>> counts_;  // per categorical entry
  std::vector<double> cum_;               // cumulative probabilities
};

// all particles in the condensate mode
Eigen::VectorXcd product_state(const fock::OccupationBasis& fixed);

// U* e^{B(tau)} Omega pulled back to the fixed-N sector; tau must be even
// under the pairing
Eigen::VectorXcd quasifree_state(const fock::OccupationBasis& fixed,
                                 const std::vector<double>& tau,
                                 const std::vector<std::size_t>& pairing);

// U* e^{B(eta)} e^{B(tau)} Omega
Eigen::VectorXcd dressed_state(const fock::OccupationBasis& fixed,
                               const std::vector<double>& eta,
                               const std::vector<double>& tau,
                               const std::vector<std::size_t>& pairing);

}  // namespace bosestat::qsim
