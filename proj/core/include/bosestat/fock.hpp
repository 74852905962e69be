#pragma once

// Dense second-quantized operators on occupation bases: transfer operators,
// creation and annihilation with their particle-number-weighted variants, the
// excitation map that splits off the condensate, pair generators, and matrix
// exponentials. Sizes here are desk scale, so everything is dense.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "bosestat/occupation.hpp"

namespace bosestat::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// a*_to a_from as one particle-conserving matrix; works on both basis kinds
Matrix transfer(const OccupationBasis& basis, int to_mode, int from_mode);

// a*_mode and a_mode on a truncated basis; amplitudes that would leave the
// cap are dropped by the compression
Matrix creation(const OccupationBasis& basis, int mode);
Matrix annihilation(const OccupationBasis& basis, int mode);

// diagonal operator counting all particles in the basis modes
Matrix number_operator(const OccupationBasis& basis);

// dGamma(A) = sum_ij A_ij a*_i a_j; A must be n_modes x n_modes
Matrix second_quantize(const OccupationBasis& basis, const Matrix& one_body);

// b_mode = sqrt((N - N_+)/N) a_mode with N the basis cap, and its adjoint;
// these leave a truncated basis invariant exactly
Matrix modified_annihilation(const OccupationBasis& basis, int mode);
Matrix modified_creation(const OccupationBasis& basis, int mode);

// b(h) = sum_p conj(h_p) b_p and b*(h) = sum_p h_p b*_p
Matrix b_field(const OccupationBasis& basis, const Vector& h);
Matrix b_star_field(const OccupationBasis& basis, const Vector& h);

// unitary permutation from a fixed-total basis (mode 0 = condensate) to the
// truncated excitation basis over the remaining modes: the zero-mode
// occupation is dropped, everything else is kept verbatim
Matrix excitation_map(const OccupationBasis& fixed,
                      const OccupationBasis& truncated);

// (1/2) sum_p eta_p (b*_p b*_{-p} - b_p b_{-p}) on a truncated basis;
// pairing[i] names the mode carrying the negated momentum of mode i
Matrix bogoliubov_generator(const OccupationBasis& basis,
                            const std::vector<double>& eta,
                            const std::vector<std::size_t>& pairing);

// dGamma(A) v without forming the matrix; scales to bases where the dense
// operator would not fit
Vector apply_second_quantize(const OccupationBasis& basis,
                             const Matrix& one_body, const Vector& v);

// exp(m) by scaling and squaring with a Taylor kernel
Matrix matrix_exp(const Matrix& m);

// exp(m) v without forming exp(m), by sub-stepped Taylor sums
Vector apply_exp(const Matrix& m, const Vector& v);

}  // namespace bosestat::fock
