#include "bosestat/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bosestat::qsim {

namespace {

using fock::Occupation;
using fock::OccupationBasis;

struct TwoModeRotation {
  int i = 0;
  int j = 0;
  Eigen::Matrix2cd block;
};

// sector matrix of Gamma(g) on modes (i, j) at total t: entry (m, k) is the
// amplitude from occupation (k, t-k) to (m, t-m)
Eigen::MatrixXcd sector_matrix(const Eigen::Matrix2cd& g, int t) {
  Eigen::MatrixXcd r(t + 1, t + 1);
  std::vector<Complex> poly, next;
  for (int k = 0; k <= t; ++k) {
    poly.assign(1, Complex(1.0));
    // (g00 a*_i + g10 a*_j)^k (g01 a*_i + g11 a*_j)^(t-k), tracked by the
    // degree in a*_i
    for (int step = 0; step < t; ++step) {
      const bool first = step < k;
      const Complex ci = first ? g(0, 0) : g(0, 1);
      const Complex cj = first ? g(1, 0) : g(1, 1);
      next.assign(poly.size() + 1, Complex(0.0));
      for (std::size_t m = 0; m < poly.size(); ++m) {
        next[m + 1] += ci * poly[m];
        next[m] += cj * poly[m];
      }
      poly.swap(next);
    }
    for (int m = 0; m <= t; ++m) {
      const double scale =
          0.5 * (std::lgamma(m + 1.0) + std::lgamma(t - m + 1.0) -
                 std::lgamma(k + 1.0) - std::lgamma(t - k + 1.0));
      r(m, k) = poly[std::size_t(m)] * std::exp(scale);
    }
  }
  return r;
}

void apply_two_mode(const OccupationBasis& basis, Eigen::VectorXcd& amps,
                    const TwoModeRotation& rot,
                    const std::vector<Eigen::MatrixXcd>& sectors) {
  const Eigen::VectorXcd old = amps;
  Occupation member;
  for (std::size_t u = 0; u < basis.size(); ++u) {
    const Occupation& occ = basis.at(u);
    const int m = occ[std::size_t(rot.i)];
    const int t = m + occ[std::size_t(rot.j)];
    if (t == 0) continue;
    const Eigen::MatrixXcd& r = sectors[std::size_t(t)];
    Complex acc = 0.0;
    member = occ;
    for (int k = 0; k <= t; ++k) {
      const Complex w = r(m, k);
      if (w == Complex(0.0)) continue;
      member[std::size_t(rot.i)] = k;
      member[std::size_t(rot.j)] = t - k;
      acc += w * old[Eigen::Index(basis.index_of(member))];
    }
    amps[Eigen::Index(u)] = acc;
  }
}

Eigen::VectorXcd pull_back(const OccupationBasis& fixed,
                           const OccupationBasis& trunc,
                           const Eigen::VectorXcd& xi) {
  Eigen::VectorXcd out(Eigen::Index(fixed.size()));
  for (std::size_t j = 0; j < fixed.size(); ++j) {
    const Occupation& occ = fixed.at(j);
    const Occupation rest(occ.begin() + 1, occ.end());
    out[Eigen::Index(j)] = xi[Eigen::Index(trunc.index_of(rest))];
  }
  return out;
}

void check_pairing(const std::vector<double>& values,
                   const std::vector<std::size_t>& pairing,
                   std::size_t n_modes) {
  if (values.size() != n_modes || pairing.size() != n_modes) {
    throw std::invalid_argument("coefficients must cover all excited modes");
  }
  for (std::size_t i = 0; i < pairing.size(); ++i) {
    if (pairing[i] >= n_modes || pairing[pairing[i]] != i) {
      throw std::invalid_argument("pairing must be an involution");
    }
    if (values[i] != values[pairing[i]]) {
      throw std::invalid_argument("coefficients must be even under the pairing");
    }
  }
}

Eigen::VectorXcd finish_state(const OccupationBasis& fixed,
                              const OccupationBasis& trunc,
                              const Eigen::VectorXcd& xi) {
  Eigen::VectorXcd psi = pull_back(fixed, trunc, xi);
  const double norm = psi.norm();
  if (std::fabs(norm - 1.0) > 1e-10) {
    throw std::runtime_error("model state lost normalization");
  }
  return psi / norm;
}

}  // namespace

Eigen::VectorXcd rotate_modes(const OccupationBasis& basis,
                              const Eigen::VectorXcd& psi,
                              const Eigen::MatrixXcd& u) {
  const int d = basis.n_modes();
  if (u.rows() != d || u.cols() != d) {
    throw std::invalid_argument("unitary must act on the basis modes");
  }
  if (psi.size() != Eigen::Index(basis.size())) {
    throw std::invalid_argument("state dimension must match the basis");
  }
  const double unitary_defect =
      (u * u.adjoint() - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (unitary_defect > 1e-10) {
    throw std::invalid_argument("mode transformation is not unitary");
  }

  // left Givens chain reducing u to a diagonal of phases
  Eigen::MatrixXcd work = u;
  std::vector<TwoModeRotation> chain;
  for (int col = 0; col < d; ++col) {
    for (int row = d - 1; row > col; --row) {
      const Complex a = work(row - 1, col);
      const Complex b = work(row, col);
      const double r = std::sqrt(std::norm(a) + std::norm(b));
      if (r <= 1e-15) continue;
      TwoModeRotation rot;
      rot.i = row - 1;
      rot.j = row;
      rot.block << std::conj(a) / r, std::conj(b) / r, -b / r, a / r;
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(d, d);
      g(rot.i, rot.i) = rot.block(0, 0);
      g(rot.i, rot.j) = rot.block(0, 1);
      g(rot.j, rot.i) = rot.block(1, 0);
      g(rot.j, rot.j) = rot.block(1, 1);
      work = (g * work).eval();
      chain.push_back(rot);
    }
  }

  // the Givens chain must have reduced u to a diagonal of phases
  for (int row = 0; row < d; ++row) {
    for (int col = 0; col < d; ++col) {
      if (row != col && std::abs(work(row, col)) > 1e-9) {
        throw std::runtime_error("mode rotation did not reduce to phases");
      }
    }
  }

  // Gamma of the diagonal phase factor
  Eigen::VectorXcd amps = psi;
  for (std::size_t s = 0; s < basis.size(); ++s) {
    Complex phase = 1.0;
    const Occupation& occ = basis.at(s);
    for (int m = 0; m < d; ++m) {
      const int n = occ[std::size_t(m)];
      for (int rep = 0; rep < n; ++rep) phase *= work(m, m);
    }
    amps[Eigen::Index(s)] *= phase;
  }

  // u = G_1^* ... G_K^* D, so apply the adjoint blocks in reverse order
  const int cap = basis.n_particles();
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    TwoModeRotation adj = *it;
    adj.block = it->block.adjoint().eval();
    std::vector<Eigen::MatrixXcd> sectors(std::size_t(cap) + 1);
    for (int t = 0; t <= cap; ++t) sectors[std::size_t(t)] = sector_matrix(adj.block, t);
    apply_two_mode(basis, amps, adj, sectors);
  }
  return amps;
}

MeasurementSampler::MeasurementSampler(const OccupationBasis& basis,
                                       const Eigen::VectorXcd& psi,
                                       const bogo::SpectralObservable& observable)
    : n_(basis.n_particles()) {
  if (basis.is_truncated()) {
    throw std::invalid_argument("sampling needs a fixed-total basis");
  }
  if (int(observable.dim()) != basis.n_modes()) {
    throw std::invalid_argument("observable must act on the basis modes");
  }
  if (std::fabs(psi.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("state must be normalized");
  }

  const Eigen::VectorXcd rotated =
      rotate_modes(basis, psi, observable.eigenvectors().adjoint().eval());

  atoms_ = observable.spectral_atoms();
  const auto& atom_of = observable.atom_index();

  counts_.reserve(basis.size());
  cum_.reserve(basis.size());
  double total = 0.0;
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const Occupation& occ = basis.at(s);
    std::vector<int> counts(atoms_.size(), 0);
    for (int m = 0; m < basis.n_modes(); ++m) {
      counts[atom_of[std::size_t(m)]] += occ[std::size_t(m)];
    }
    counts_.push_back(std::move(counts));
    total += std::norm(rotated[Eigen::Index(s)]);
    cum_.push_back(total);
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw std::runtime_error("rotated state lost normalization");
  }
  for (double& c : cum_) c /= total;
  cum_.back() = 1.0;
}

std::vector<int> MeasurementSampler::draw_counts(rng::Stream& stream) const {
  const double u = stream.uniform();
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  const std::size_t idx =
      std::min(std::size_t(it - cum_.begin()), counts_.size() - 1);
  return counts_[idx];
}

std::vector<double> MeasurementSampler::draw(rng::Stream& stream) const {
  const std::vector<int> counts = draw_counts(stream);
  std::vector<double> outcomes;
  outcomes.reserve(std::size_t(n_));
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    for (int rep = 0; rep < counts[a]; ++rep) outcomes.push_back(atoms_[a]);
  }
  stream.shuffle(outcomes);
  return outcomes;
}

ot::DiscreteMeasure MeasurementSampler::marginal() const {
  std::vector<double> weights(atoms_.size(), 0.0);
  double prev = 0.0;
  for (std::size_t s = 0; s < counts_.size(); ++s) {
    const double prob = cum_[s] - prev;
    prev = cum_[s];
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      weights[a] += prob * double(counts_[s][a]) / double(n_);
    }
  }
  return ot::DiscreteMeasure::from_points(atoms_, weights);
}

Eigen::VectorXcd product_state(const OccupationBasis& fixed) {
  if (fixed.is_truncated()) {
    throw std::invalid_argument("product state needs a fixed-total basis");
  }
  Occupation occ(std::size_t(fixed.n_modes()), 0);
  occ[0] = fixed.n_particles();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index(fixed.size()));
  psi[Eigen::Index(fixed.index_of(occ))] = 1.0;
  return psi;
}

Eigen::VectorXcd quasifree_state(const OccupationBasis& fixed,
                                 const std::vector<double>& tau,
                                 const std::vector<std::size_t>& pairing) {
  if (fixed.is_truncated()) {
    throw std::invalid_argument("model states need a fixed-total basis");
  }
  const std::size_t d_plus = std::size_t(fixed.n_modes() - 1);
  check_pairing(tau, pairing, d_plus);

  auto trunc =
      OccupationBasis::truncated(int(d_plus), fixed.n_particles());
  Eigen::VectorXcd omega =
      Eigen::VectorXcd::Zero(Eigen::Index(trunc.size()));
  omega[Eigen::Index(trunc.index_of(Occupation(d_plus, 0)))] = 1.0;

  const fock::Matrix b = fock::bogoliubov_generator(trunc, tau, pairing);
  const Eigen::VectorXcd xi = fock::apply_exp(b, omega);
  return finish_state(fixed, trunc, xi);
}

Eigen::VectorXcd dressed_state(const OccupationBasis& fixed,
                               const std::vector<double>& eta,
                               const std::vector<double>& tau,
                               const std::vector<std::size_t>& pairing) {
  if (fixed.is_truncated()) {
    throw std::invalid_argument("model states need a fixed-total basis");
  }
  const std::size_t d_plus = std::size_t(fixed.n_modes() - 1);
  check_pairing(tau, pairing, d_plus);
  check_pairing(eta, pairing, d_plus);

  auto trunc =
      OccupationBasis::truncated(int(d_plus), fixed.n_particles());
  Eigen::VectorXcd omega =
      Eigen::VectorXcd::Zero(Eigen::Index(trunc.size()));
  omega[Eigen::Index(trunc.index_of(Occupation(d_plus, 0)))] = 1.0;

  Eigen::VectorXcd xi =
      fock::apply_exp(fock::bogoliubov_generator(trunc, tau, pairing), omega);
  xi = fock::apply_exp(fock::bogoliubov_generator(trunc, eta, pairing), xi);
  return finish_state(fixed, trunc, xi);
}

}  // namespace bosestat::qsim
