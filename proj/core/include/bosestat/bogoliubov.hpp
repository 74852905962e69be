#pragma once

// Quasi-free dressing of single-mode data: the dressing exponent mu_p, the
// sigma vectors that carry fluctuation observables, their covariance, and the
// dressed dispersion with its diagonalizing angles.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bosestat/lattice.hpp"
#include "bosestat/scattering.hpp"
#include "bosestat/spectral.hpp"

namespace bosestat::bogo {

// Dressing exponent (1/4) log(p^2 / (p^2 + 16 pi a0)) for p != 0.
// Throws std::domain_error at p = 0.
double mu_p(double a0, double p_sq);

// sigma_f over the lattice: sigma(p) = cosh(mu_p) v(p) + sinh(mu_p) v(-p)
// where v = q f(O) phi, q = 1 - |phi><phi|, phi the zero-mode basis vector.
// The observable must act on [zero mode | lattice points], dim = size + 1.
std::vector<Complex> sigma_f(const SpectralObservable& observable,
                             const std::function<double(double)>& f,
                             double a0,
                             const lattice::MomentumLattice& modes);

struct CovarianceReport {
  // real part of the Gram matrix of the sigma vectors; this is the
  // asymptotic covariance (symmetric PSD)
  Eigen::MatrixXd covariance;
  // imaginary part, kept for diagnostics; zero when the data are real
  Eigen::MatrixXd gram_imag;
};

CovarianceReport covariance_matrix(
    const std::vector<std::vector<Complex>>& sigmas);

struct DressedDispersion {
  std::vector<double> f;    // diagonal energy F_p, aligned with the lattice
  std::vector<double> g;    // pairing energy G_p
  std::vector<double> tau;  // (1/2) artanh(-G_p / F_p)
};

// vhat samples the potential's Fourier transform at physical wavenumbers.
// The convolution term uses eta including its zero-mode value. Throws
// std::runtime_error naming the mode when |G_p| >= F_p.
DressedDispersion dressed_dispersion(const std::function<double(double)>& vhat,
                                     const scattering::EtaCoefficients& eta,
                                     const lattice::MomentumLattice& modes,
                                     int n_particles);

}  // namespace bosestat::bogo
