#pragma once

// The truncated plane-wave model of N bosons on the unit torus: mode table,
// Hamiltonian assembly on the fixed-N occupation basis, reduced densities,
// and the exact fluctuation quadratic form.

#include <complex>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bosestat/fock.hpp"
#include "bosestat/lattice.hpp"
#include "bosestat/occupation.hpp"
#include "bosestat/scattering.hpp"
#include "bosestat/spectral.hpp"

namespace bosestat::qsim {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

// Mode 0 is the condensate; modes 1..d-1 are the lattice points in order.
class TorusModel {
 public:
  TorusModel(lattice::MomentumLattice modes, int n_particles,
             scattering::RadialPotential potential);

  int n_modes() const { return int(modes_.size()) + 1; }
  int n_particles() const { return n_; }
  const lattice::MomentumLattice& excited_modes() const { return modes_; }
  const scattering::RadialPotential& potential() const { return potential_; }

  lattice::Coord mode_coord(int mode) const;
  double mode_energy(int mode) const;  // |2 pi n|^2

  // interaction sample V_hat(2 pi |k| / N) for an integer transfer k,
  // precomputed for every reachable difference
  double vhat(const lattice::Coord& transfer) const;

 private:
  lattice::MomentumLattice modes_;
  int n_ = 0;
  scattering::RadialPotential potential_;
  std::map<long, double> vhat_by_norm_sq_;
};

struct ModeOperator {
  fock::OccupationBasis basis;
  SparseMatrix matrix;
};

// Kinetic term dGamma(p^2) plus the momentum-conserving two-body term
// (1/2N) sum V_hat(k) a*_{p+k} a*_{q-k} a_q a_p within the cutoff.
ModeOperator build_hamiltonian(const TorusModel& model);

// one-particle reduced density: gamma_kl = <psi, a*_l a_k psi> / N
Eigen::MatrixXcd reduced_density(const fock::OccupationBasis& basis,
                                 const Eigen::VectorXcd& psi);

// <psi, [dGamma(g(O) - <phi, g(O) phi>) / N]^2 psi>: the exact fluctuation
// variance of the empirical mean of g under the measurement of O
double variance_lhs(const fock::OccupationBasis& basis,
                    const Eigen::VectorXcd& psi,
                    const bogo::SpectralObservable& observable,
                    const std::function<double(double)>& g);

}  // namespace bosestat::qsim
