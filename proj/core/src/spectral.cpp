#include "bosestat/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace bosestat::bogo {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kAtomMergeTol = 1e-9;

}  // namespace

SpectralObservable::SpectralObservable(Eigen::MatrixXcd matrix)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("observable matrix must be square and nonempty");
  }
  const double defect = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if (defect > kHermitianTol * scale) {
    throw std::invalid_argument("observable matrix is not Hermitian");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint().eval());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  evals_ = solver.eigenvalues();
  evecs_ = solver.eigenvectors();

  atom_of_.resize(std::size_t(evals_.size()));
  for (Eigen::Index k = 0; k < evals_.size(); ++k) {
    if (k > 0 && evals_[k] - atoms_.back() <= kAtomMergeTol) {
      atom_of_[std::size_t(k)] = atoms_.size() - 1;
    } else {
      atoms_.push_back(evals_[k]);
      atom_of_[std::size_t(k)] = atoms_.size() - 1;
    }
  }
}

SpectralObservable SpectralObservable::multiplication_cosine(
    const lattice::MomentumLattice& modes) {
  const std::size_t n = modes.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(n) + 1,
                                              Eigen::Index(n) + 1);
  // basis row i+1 holds lattice coord i; row 0 is the zero mode
  auto row_of = [&](const lattice::Coord& c) -> Eigen::Index {
    if (c == lattice::Coord{0, 0, 0}) return 0;
    if (!modes.contains(c)) return -1;
    return Eigen::Index(modes.index_of(c)) + 1;
  };
  auto coord_at = [&](Eigen::Index row) -> lattice::Coord {
    if (row == 0) return {0, 0, 0};
    return modes.coords()[std::size_t(row - 1)];
  };
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (int s : {+1, -1}) {
      lattice::Coord c = coord_at(i);
      c[0] += s;
      const Eigen::Index j = row_of(c);
      if (j >= 0) m(j, i) += 0.5;
    }
  }
  return SpectralObservable(std::move(m));
}

Eigen::MatrixXcd SpectralObservable::apply_function(
    const std::function<double(double)>& f) const {
  Eigen::VectorXd fe(evals_.size());
  for (Eigen::Index k = 0; k < evals_.size(); ++k) fe[k] = f(evals_[k]);
  return evecs_ * fe.asDiagonal() * evecs_.adjoint();
}

ot::DiscreteMeasure nu_phi(const SpectralObservable& observable) {
  const auto& atoms = observable.spectral_atoms();
  std::vector<double> weights(atoms.size(), 0.0);
  const auto& u = observable.eigenvectors();
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    weights[observable.atom_index()[std::size_t(k)]] += std::norm(u(0, k));
  }
  return ot::DiscreteMeasure::from_points(atoms, weights);
}

}  // namespace bosestat::bogo
