#include "bosestat/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace bosestat::fock {

namespace {

void check_mode(const OccupationBasis& basis, int mode) {
  if (mode < 0 || mode >= basis.n_modes()) {
    throw std::invalid_argument("mode index out of range");
  }
}

void require_truncated(const OccupationBasis& basis) {
  if (!basis.is_truncated()) {
    throw std::invalid_argument("operator needs a truncated basis");
  }
}

}  // namespace

Matrix transfer(const OccupationBasis& basis, int to_mode, int from_mode) {
  check_mode(basis, to_mode);
  check_mode(basis, from_mode);
  const Eigen::Index dim = Eigen::Index(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  Occupation target;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Occupation& occ = basis.at(j);
    const int nf = occ[std::size_t(from_mode)];
    if (nf == 0) continue;
    if (to_mode == from_mode) {
      m(Eigen::Index(j), Eigen::Index(j)) = double(nf);
      continue;
    }
    target = occ;
    --target[std::size_t(from_mode)];
    ++target[std::size_t(to_mode)];
    const std::size_t i = basis.index_of(target);
    m(Eigen::Index(i), Eigen::Index(j)) =
        std::sqrt(double(nf)) *
        std::sqrt(double(occ[std::size_t(to_mode)] + 1));
  }
  return m;
}

Matrix creation(const OccupationBasis& basis, int mode) {
  require_truncated(basis);
  check_mode(basis, mode);
  const Eigen::Index dim = Eigen::Index(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  Occupation target;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis.total(j) >= basis.n_particles()) continue;
    target = basis.at(j);
    ++target[std::size_t(mode)];
    const std::size_t i = basis.index_of(target);
    m(Eigen::Index(i), Eigen::Index(j)) = std::sqrt(double(target[std::size_t(mode)]));
  }
  return m;
}

Matrix annihilation(const OccupationBasis& basis, int mode) {
  require_truncated(basis);
  check_mode(basis, mode);
  const Eigen::Index dim = Eigen::Index(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  Occupation target;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Occupation& occ = basis.at(j);
    const int n = occ[std::size_t(mode)];
    if (n == 0) continue;
    target = occ;
    --target[std::size_t(mode)];
    const std::size_t i = basis.index_of(target);
    m(Eigen::Index(i), Eigen::Index(j)) = std::sqrt(double(n));
  }
  return m;
}

Matrix number_operator(const OccupationBasis& basis) {
  const Eigen::Index dim = Eigen::Index(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    m(Eigen::Index(j), Eigen::Index(j)) = double(basis.total(j));
  }
  return m;
}

Matrix second_quantize(const OccupationBasis& basis, const Matrix& one_body) {
  if (one_body.rows() != basis.n_modes() ||
      one_body.cols() != basis.n_modes()) {
    throw std::invalid_argument("one-body matrix must match the mode count");
  }
  const Eigen::Index dim = Eigen::Index(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  Occupation target;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Occupation& occ = basis.at(col);
    for (int from = 0; from < basis.n_modes(); ++from) {
      const int nf = occ[std::size_t(from)];
      if (nf == 0) continue;
      for (int to = 0; to < basis.n_modes(); ++to) {
        const Complex coeff = one_body(to, from);
        if (coeff == Complex(0.0)) continue;
        if (to == from) {
          m(Eigen::Index(col), Eigen::Index(col)) += coeff * double(nf);
          continue;
        }
        target = occ;
        --target[std::size_t(from)];
        ++target[std::size_t(to)];
        const std::size_t row = basis.index_of(target);
        m(Eigen::Index(row), Eigen::Index(col)) +=
            coeff * std::sqrt(double(nf)) *
            std::sqrt(double(occ[std::size_t(to)] + 1));
      }
    }
  }
  return m;
}

Matrix modified_annihilation(const OccupationBasis& basis, int mode) {
  require_truncated(basis);
  check_mode(basis, mode);
  const int cap = basis.n_particles();
  const Eigen::Index dim = Eigen::Index(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  Occupation target;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const Occupation& occ = basis.at(j);
    const int n = occ[std::size_t(mode)];
    if (n == 0) continue;
    target = occ;
    --target[std::size_t(mode)];
    const std::size_t i = basis.index_of(target);
    // the number factor is evaluated after the annihilation
    const double weight =
        std::sqrt(double(cap - (basis.total(j) - 1)) / double(cap));
    m(Eigen::Index(i), Eigen::Index(j)) = weight * std::sqrt(double(n));
  }
  return m;
}

Matrix modified_creation(const OccupationBasis& basis, int mode) {
  require_truncated(basis);
  check_mode(basis, mode);
  const int cap = basis.n_particles();
  const Eigen::Index dim = Eigen::Index(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  Occupation target;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const int total = basis.total(j);
    if (total >= cap) continue;  // the number factor vanishes at the cap
    target = basis.at(j);
    ++target[std::size_t(mode)];
    const std::size_t i = basis.index_of(target);
    const double weight = std::sqrt(double(cap - total) / double(cap));
    m(Eigen::Index(i), Eigen::Index(j)) =
        weight * std::sqrt(double(target[std::size_t(mode)]));
  }
  return m;
}

Matrix b_field(const OccupationBasis& basis, const Vector& h) {
  if (h.size() != basis.n_modes()) {
    throw std::invalid_argument("coefficient vector must match the modes");
  }
  const Eigen::Index dim = Eigen::Index(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  for (int p = 0; p < basis.n_modes(); ++p) {
    if (h[p] == Complex(0.0)) continue;
    m += std::conj(h[p]) * modified_annihilation(basis, p);
  }
  return m;
}

Matrix b_star_field(const OccupationBasis& basis, const Vector& h) {
  if (h.size() != basis.n_modes()) {
    throw std::invalid_argument("coefficient vector must match the modes");
  }
  const Eigen::Index dim = Eigen::Index(basis.size());
  Matrix m = Matrix::Zero(dim, dim);
  for (int p = 0; p < basis.n_modes(); ++p) {
    if (h[p] == Complex(0.0)) continue;
    m += h[p] * modified_creation(basis, p);
  }
  return m;
}

Matrix excitation_map(const OccupationBasis& fixed,
                      const OccupationBasis& truncated) {
  if (fixed.is_truncated() || !truncated.is_truncated()) {
    throw std::invalid_argument(
        "excitation map goes from a fixed-total to a truncated basis");
  }
  if (fixed.n_modes() != truncated.n_modes() + 1) {
    throw std::invalid_argument("truncated basis must drop exactly one mode");
  }
  if (fixed.n_particles() != truncated.n_particles()) {
    throw std::invalid_argument("particle totals must agree");
  }
  if (fixed.size() != truncated.size()) {
    throw std::invalid_argument("bases are not in bijection");
  }
  const Eigen::Index dim = Eigen::Index(fixed.size());
  Matrix u = Matrix::Zero(dim, dim);
  for (std::size_t j = 0; j < fixed.size(); ++j) {
    const Occupation& occ = fixed.at(j);
    const Occupation rest(occ.begin() + 1, occ.end());
    u(Eigen::Index(truncated.index_of(rest)), Eigen::Index(j)) = 1.0;
  }
  return u;
}

Matrix bogoliubov_generator(const OccupationBasis& basis,
                            const std::vector<double>& eta,
                            const std::vector<std::size_t>& pairing) {
  require_truncated(basis);
  if (eta.size() != std::size_t(basis.n_modes()) ||
      pairing.size() != eta.size()) {
    throw std::invalid_argument("eta and pairing must cover all modes");
  }
  for (std::size_t i = 0; i < pairing.size(); ++i) {
    if (pairing[i] >= pairing.size() || pairing[pairing[i]] != i) {
      throw std::invalid_argument("pairing must be an involution");
    }
  }
  const Eigen::Index dim = Eigen::Index(basis.size());
  Matrix b = Matrix::Zero(dim, dim);
  for (int p = 0; p < basis.n_modes(); ++p) {
    if (eta[std::size_t(p)] == 0.0) continue;
    const int np = int(pairing[std::size_t(p)]);
    const Matrix pair_up =
        modified_creation(basis, p) * modified_creation(basis, np);
    b += (0.5 * eta[std::size_t(p)]) * (pair_up - pair_up.adjoint());
  }
  return b;
}

Vector apply_second_quantize(const OccupationBasis& basis,
                             const Matrix& one_body, const Vector& v) {
  if (one_body.rows() != basis.n_modes() ||
      one_body.cols() != basis.n_modes()) {
    throw std::invalid_argument("one-body matrix must match the mode count");
  }
  if (v.size() != Eigen::Index(basis.size())) {
    throw std::invalid_argument("state dimension must match the basis");
  }
  Vector out = Vector::Zero(v.size());
  Occupation target;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Complex amp = v[Eigen::Index(col)];
    if (amp == Complex(0.0)) continue;
    const Occupation& occ = basis.at(col);
    for (int from = 0; from < basis.n_modes(); ++from) {
      const int nf = occ[std::size_t(from)];
      if (nf == 0) continue;
      for (int to = 0; to < basis.n_modes(); ++to) {
        const Complex coeff = one_body(to, from);
        if (coeff == Complex(0.0)) continue;
        if (to == from) {
          out[Eigen::Index(col)] += coeff * double(nf) * amp;
          continue;
        }
        target = occ;
        --target[std::size_t(from)];
        ++target[std::size_t(to)];
        const std::size_t row = basis.index_of(target);
        out[Eigen::Index(row)] += coeff * std::sqrt(double(nf)) *
                                  std::sqrt(double(occ[std::size_t(to)] + 1)) *
                                  amp;
      }
    }
  }
  return out;
}

Matrix matrix_exp(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix exponential needs a square matrix");
  }
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = int(std::ceil(std::log2(norm / 0.5)));
  }
  const Matrix a = m / std::pow(2.0, squarings);

  Matrix result = Matrix::Identity(m.rows(), m.cols());
  Matrix term = Matrix::Identity(m.rows(), m.cols());
  for (int k = 1; k <= 64; ++k) {
    term = (term * a / double(k)).eval();
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) {
      break;
    }
  }
  for (int s = 0; s < squarings; ++s) result = (result * result).eval();
  return result;
}

Vector apply_exp(const Matrix& m, const Vector& v) {
  if (m.rows() != m.cols() || m.cols() != v.size()) {
    throw std::invalid_argument("apply_exp dimension mismatch");
  }
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int steps = 1;
  if (norm > 0.5) {
    steps = int(std::ceil(norm / 0.5));
  }
  Vector w = v;
  for (int s = 0; s < steps; ++s) {
    Vector acc = w;
    Vector term = w;
    for (int k = 1; k <= 64; ++k) {
      term = (m * term / double(k * steps)).eval();
      acc += term;
      if (term.norm() <= 1e-18 * acc.norm()) break;
    }
    w = acc;
  }
  return w;
}

}  // namespace bosestat::fock
