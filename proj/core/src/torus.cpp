#include "bosestat/torus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bosestat::qsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

long norm_sq(const lattice::Coord& c) {
  return long(c[0]) * c[0] + long(c[1]) * c[1] + long(c[2]) * c[2];
}

lattice::Coord diff(const lattice::Coord& a, const lattice::Coord& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

}  // namespace

TorusModel::TorusModel(lattice::MomentumLattice modes, int n_particles,
                       scattering::RadialPotential potential)
    : modes_(std::move(modes)), n_(n_particles),
      potential_(std::move(potential)) {
  if (n_ < 1) throw std::invalid_argument("need at least one particle");
  if (potential_.fourier(0.0) < 0.0) {
    throw std::invalid_argument("potential must have V_hat(0) >= 0");
  }

  // every transfer is a difference of two table modes (zero mode included)
  std::vector<lattice::Coord> table;
  table.push_back({0, 0, 0});
  for (const auto& c : modes_.coords()) table.push_back(c);
  for (const auto& a : table) {
    for (const auto& b : table) {
      const long m = norm_sq(diff(a, b));
      if (vhat_by_norm_sq_.count(m)) continue;
      vhat_by_norm_sq_[m] = potential_.fourier(kTwoPi * std::sqrt(double(m)) / n_);
    }
  }
}

lattice::Coord TorusModel::mode_coord(int mode) const {
  if (mode < 0 || mode >= n_modes()) {
    throw std::invalid_argument("mode index out of range");
  }
  if (mode == 0) return {0, 0, 0};
  return modes_.coords()[std::size_t(mode - 1)];
}

double TorusModel::mode_energy(int mode) const {
  if (mode == 0) return 0.0;
  return modes_.momentum_sq(std::size_t(mode - 1));
}

double TorusModel::vhat(const lattice::Coord& transfer) const {
  const auto it = vhat_by_norm_sq_.find(norm_sq(transfer));
  if (it == vhat_by_norm_sq_.end()) {
    throw std::invalid_argument("transfer momentum outside the cached table");
  }
  return it->second;
}

ModeOperator build_hamiltonian(const TorusModel& model) {
  const int d = model.n_modes();
  const int n = model.n_particles();
  if (d > 8 || n > 10) {
    throw std::invalid_argument("hamiltonian assembly is desk scale: d <= 8, N <= 10");
  }

  auto basis = fock::OccupationBasis::fixed_total(d, n);
  const Eigen::Index dim = Eigen::Index(basis.size());

  std::vector<lattice::Coord> coord(static_cast<std::size_t>(d));
  for (int m = 0; m < d; ++m) coord[std::size_t(m)] = model.mode_coord(m);
  auto mode_of = [&](const lattice::Coord& c) -> int {
    if (c == lattice::Coord{0, 0, 0}) return 0;
    if (!model.excited_modes().contains(c)) return -1;
    return int(model.excited_modes().index_of(c)) + 1;
  };

  std::vector<Eigen::Triplet<Complex>> triplets;
  fock::Occupation work;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const fock::Occupation& occ = basis.at(col);

    double kinetic = 0.0;
    for (int m = 0; m < d; ++m) {
      kinetic += model.mode_energy(m) * occ[std::size_t(m)];
    }
    triplets.emplace_back(Eigen::Index(col), Eigen::Index(col), kinetic);

    // a*_r a*_s a_q a_p with p + q = r + s
    for (int p = 0; p < d; ++p) {
      if (occ[std::size_t(p)] == 0) continue;
      for (int q = 0; q < d; ++q) {
        const int nq_after_p = occ[std::size_t(q)] - (q == p ? 1 : 0);
        if (nq_after_p <= 0) continue;
        for (int r = 0; r < d; ++r) {
          lattice::Coord s_coord;
          for (int c = 0; c < 3; ++c) {
            s_coord[std::size_t(c)] = coord[std::size_t(p)][std::size_t(c)] +
                                      coord[std::size_t(q)][std::size_t(c)] -
                                      coord[std::size_t(r)][std::size_t(c)];
          }
          const int s = mode_of(s_coord);
          if (s < 0) continue;

          work = occ;
          double amp = std::sqrt(double(work[std::size_t(p)]));
          --work[std::size_t(p)];
          amp *= std::sqrt(double(work[std::size_t(q)]));
          --work[std::size_t(q)];
          amp *= std::sqrt(double(work[std::size_t(s)] + 1));
          ++work[std::size_t(s)];
          amp *= std::sqrt(double(work[std::size_t(r)] + 1));
          ++work[std::size_t(r)];

          const double v =
              model.vhat(diff(coord[std::size_t(r)], coord[std::size_t(p)]));
          const std::size_t row = basis.index_of(work);
          triplets.emplace_back(Eigen::Index(row), Eigen::Index(col),
                                amp * v / (2.0 * n));
        }
      }
    }
  }

  ModeOperator op{std::move(basis), SparseMatrix(dim, dim)};
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix.makeCompressed();
  return op;
}

Eigen::MatrixXcd reduced_density(const fock::OccupationBasis& basis,
                                 const Eigen::VectorXcd& psi) {
  if (psi.size() != Eigen::Index(basis.size())) {
    throw std::invalid_argument("state dimension must match the basis");
  }
  const int d = basis.n_modes();
  const int n = basis.n_particles();
  Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(d, d);
  fock::Occupation target;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Complex amp = psi[Eigen::Index(j)];
    if (amp == Complex(0.0)) continue;
    const fock::Occupation& occ = basis.at(j);
    for (int k = 0; k < d; ++k) {
      const int nk = occ[std::size_t(k)];
      if (nk == 0) continue;
      gamma(k, k) += std::norm(amp) * double(nk) / double(n);
      for (int l = 0; l < d; ++l) {
        if (l == k) continue;
        target = occ;
        --target[std::size_t(k)];
        ++target[std::size_t(l)];
        if (!basis.contains(target)) continue;
        const std::size_t i = basis.index_of(target);
        // gamma_kl = <psi, a*_l a_k psi> / N
        gamma(k, l) += std::conj(psi[Eigen::Index(i)]) * amp *
                       std::sqrt(double(nk)) *
                       std::sqrt(double(occ[std::size_t(l)] + 1)) / double(n);
      }
    }
  }
  return gamma;
}

double variance_lhs(const fock::OccupationBasis& basis,
                    const Eigen::VectorXcd& psi,
                    const bogo::SpectralObservable& observable,
                    const std::function<double(double)>& g) {
  if (int(observable.dim()) != basis.n_modes()) {
    throw std::invalid_argument("observable must act on the basis modes");
  }
  Eigen::MatrixXcd centered = observable.apply_function(g);
  const Complex condensate_mean = centered(0, 0);
  centered -= condensate_mean *
              Eigen::MatrixXcd::Identity(centered.rows(), centered.cols());

  const Eigen::VectorXcd w = fock::apply_second_quantize(basis, centered, psi);
  const double n = double(basis.n_particles());
  return w.squaredNorm() / (n * n);
}

}  // namespace bosestat::qsim
