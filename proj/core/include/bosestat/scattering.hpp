#pragma once

// Zero-energy scattering problem, the lowest Neumann eigenpair on a finite
// ball, and the lattice coefficients built from its solution.

#include <cstddef>
#include <vector>

#include "bosestat/lattice.hpp"

namespace bosestat::scattering {

// Nonnegative, compactly supported radial pair potential.
class RadialPotential {
 public:
  static RadialPotential soft_sphere(double v0, double radius);

  // Piecewise linear profile through (r_i, v_i) with r strictly increasing
  // starting at 0; the potential vanishes beyond the last node.
  static RadialPotential tabulated(std::vector<double> r,
                                   std::vector<double> v);

  static RadialPotential zero();

  double operator()(double r) const;
  double support_radius() const;
  bool is_zero() const;

  // Fourier transform over R^3, V^(k) = 4 pi int r^2 V(r) sinc(kr) dr.
  // Closed form for the soft sphere, piecewise quadrature otherwise.
  double fourier(double k) const;

  // Segment boundaries inside the support on which the profile is smooth;
  // integrators align their grids to these.
  const std::vector<double>& breakpoints() const { return breaks_; }

  // Value seen from inside segment s = [breaks[s], breaks[s+1]]; at a
  // discontinuity the one-sided limit of the segment wins. Indices at or
  // past the last segment refer to the region outside the support (V = 0).
  double value_in_segment(std::size_t s, double r) const;

 private:
  RadialPotential() = default;

  enum class Kind { zero, soft_sphere, tabulated } kind_ = Kind::zero;
  double v0_ = 0.0;
  double radius_ = 0.0;
  std::vector<double> nodes_r_;
  std::vector<double> nodes_v_;
  std::vector<double> breaks_;
};

struct ScatteringSolution {
  std::vector<double> r;  // integration grid inside the support, then the tail
  std::vector<double> f;  // normalized so that f -> 1 at infinity
  double a0 = 0.0;        // scattering length from the affine tail
  double residual = 0.0;  // step-halving error estimate for f and a0
  std::size_t support_end = 0;  // index of the last grid point inside [0, R]
  std::vector<std::size_t> seg;  // offsets of the uniform grid runs
};

// Solves -u'' + (V/2) u = 0, u(0) = 0, u = r f, with fixed-step RK4 aligned
// to the potential's breakpoints; outside the support the solution is
// extended by its exact affine tail u = r - a0 up to r_max.
// Preconditions: r_max >= 4 * support radius (ignored for V = 0),
// grid_size >= 16.
ScatteringSolution solve_zero_energy(const RadialPotential& V, double r_max,
                                     int grid_size = 2048);

// Independent extraction a0 = (1/8pi) int V f dx; agrees with the tail
// extraction to quadrature accuracy.
double scattering_length_integral(const ScatteringSolution& s,
                                  const RadialPotential& V);

struct NeumannSolution {
  double rho = 0.0;
  double lambda = 0.0;  // lowest Neumann eigenvalue
  std::vector<double> r;
  std::vector<double> f;        // normalized so that f(rho) = 1
  double boundary_defect = 0.0; // |f'(rho)|
  double residual = 0.0;
  std::vector<std::size_t> seg;  // offsets of the uniform grid runs

  // w = 1 - f on the ball, zero outside
  double w(double radius) const;

  // radial Fourier transform 4 pi int r^2 w(r) sinc(kr) dr
  double w_hat(double k) const;
};

// Lowest radial Neumann eigenpair of [-Delta + V/2] f = lambda f on the ball
// of radius rho; rho must exceed the support radius.
NeumannSolution solve_neumann(const RadialPotential& V, double rho,
                              int grid_size = 2048);

enum class EtaConvention {
  as_written,  // eta_p = -(1/N^2) w_hat(|p|/N), w from the ball rho = N*ell
  rescaled,    // the same quantity evaluated in the rescaled variable x = r/N
};

struct EtaCoefficients {
  std::vector<double> eta;  // aligned with the lattice points
  double eta_zero = 0.0;    // value at p = 0
};

// Bogoliubov pairing coefficients from the Neumann solution on rho = N*ell.
// The two conventions agree analytically; they differ only by quadrature
// round-off.
EtaCoefficients eta_coefficients(const NeumannSolution& sol,
                                 const lattice::MomentumLattice& modes,
                                 int n_particles, EtaConvention convention);

}  // namespace bosestat::scattering
