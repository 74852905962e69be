#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "bosestat/fock.hpp"
#include "bosestat/occupation.hpp"

using namespace bosestat::fock;

namespace {

// binomial coefficient for basis dimension checks
long choose(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Matrix random_hermitian(int n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(normal(gen), normal(gen));
  return 0.5 * (m + m.adjoint().eval());
}

Vector random_vector(Eigen::Index n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = Complex(normal(gen), normal(gen));
  return v;
}

double defect(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("occupation bases enumerate the right states in order") {
  auto fixed = OccupationBasis::fixed_total(3, 4);
  CHECK(fixed.size() == std::size_t(choose(6, 2)));
  CHECK(!fixed.is_truncated());
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    CHECK(fixed.total(i) == 4);
    CHECK(fixed.index_of(fixed.at(i)) == i);
    if (i > 0) CHECK(fixed.at(i - 1) < fixed.at(i));
  }
  CHECK(fixed.at(0) == Occupation{0, 0, 4});
  CHECK(fixed.at(fixed.size() - 1) == Occupation{4, 0, 0});

  auto trunc = OccupationBasis::truncated(3, 4);
  CHECK(trunc.size() == std::size_t(choose(7, 3)));
  CHECK(trunc.is_truncated());
  for (std::size_t i = 0; i < trunc.size(); ++i) {
    CHECK(trunc.total(i) <= 4);
    CHECK(trunc.index_of(trunc.at(i)) == i);
    if (i > 0) CHECK(trunc.at(i - 1) < trunc.at(i));
  }
  CHECK(trunc.contains(Occupation{0, 0, 0}));
  CHECK(!trunc.contains(Occupation{5, 0, 0}));
  CHECK_THROWS_AS(trunc.index_of(Occupation{5, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(fixed.at(fixed.size()), std::out_of_range);
}

TEST_CASE("transfer operators factor through creation and annihilation") {
  auto basis = OccupationBasis::truncated(3, 5);
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      Matrix direct = transfer(basis, p, q);
      Matrix product = creation(basis, p) * annihilation(basis, q);
      CHECK(defect(direct, product) <= 1e-13);
    }
  }
  CHECK_THROWS_AS(creation(OccupationBasis::fixed_total(3, 5), 0),
                  std::invalid_argument);
}

TEST_CASE("canonical commutators hold below the cap") {
  auto basis = OccupationBasis::truncated(3, 5);
  const Eigen::Index dim = Eigen::Index(basis.size());

  // projector onto totals < cap, where the compression cannot interfere
  Matrix below = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis.total(i) < basis.n_particles()) {
      below(Eigen::Index(i), Eigen::Index(i)) = 1.0;
    }
  }

  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      Matrix ap = annihilation(basis, p);
      Matrix cq = creation(basis, q);
      Matrix comm = ap * cq - cq * ap;
      Matrix expected = Matrix::Zero(dim, dim);
      if (p == q) expected = Matrix::Identity(dim, dim);
      CHECK(defect(below * comm * below, below * expected * below) <= 1e-13);
    }
  }
}

TEST_CASE("number operator and second quantization basics") {
  auto basis = OccupationBasis::truncated(3, 4);
  const Eigen::Index dim = Eigen::Index(basis.size());

  Matrix sum = Matrix::Zero(dim, dim);
  for (int p = 0; p < 3; ++p) sum += transfer(basis, p, p);
  CHECK(defect(sum, number_operator(basis)) == 0.0);

  // dGamma(I) counts particles
  CHECK(defect(second_quantize(basis, Matrix::Identity(3, 3)),
               number_operator(basis)) <= 1e-14);

  // on the fixed one-particle basis dGamma(A) is A itself, up to the
  // ordering of the basis states
  auto one = OccupationBasis::fixed_total(3, 1);
  Matrix a = random_hermitian(3, 7);
  Matrix da = second_quantize(one, a);
  for (int i = 0; i < 3; ++i) {
    Occupation ei(3, 0);
    ei[std::size_t(i)] = 1;
    for (int j = 0; j < 3; ++j) {
      Occupation ej(3, 0);
      ej[std::size_t(j)] = 1;
      CHECK(std::abs(da(Eigen::Index(one.index_of(ei)),
                        Eigen::Index(one.index_of(ej))) -
                     a(i, j)) <= 1e-14);
    }
  }
}

TEST_CASE("second quantization is a Lie algebra morphism") {
  auto basis = OccupationBasis::fixed_total(3, 4);
  Matrix a = random_hermitian(3, 11);
  Matrix b = random_hermitian(3, 13);

  Matrix da = second_quantize(basis, a);
  Matrix db = second_quantize(basis, b);
  Matrix comm_quantized = da * db - db * da;
  Matrix quantized_comm = second_quantize(basis, (a * b - b * a).eval());
  CHECK(defect(comm_quantized, quantized_comm) <= 1e-12);

  // hermiticity carries over
  CHECK(defect(da, da.adjoint()) <= 1e-13);
}

TEST_CASE("second quantization obeys the number bound") {
  auto basis = OccupationBasis::truncated(3, 5);
  Matrix a = random_hermitian(3, 17);
  Matrix da = second_quantize(basis, a);
  Matrix num = number_operator(basis);

  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  const double op_norm = solver.eigenvalues().cwiseAbs().maxCoeff();

  for (unsigned seed = 0; seed < 10; ++seed) {
    Vector psi = random_vector(Eigen::Index(basis.size()), 100 + seed);
    CHECK((da * psi).norm() <= op_norm * (num * psi).norm() + 1e-12);
  }
}

TEST_CASE("excitation map is a unitary intertwiner") {
  const int modes = 4;
  const int n = 6;
  auto fixed = OccupationBasis::fixed_total(modes, n);
  auto trunc = OccupationBasis::truncated(modes - 1, n);
  Matrix u = excitation_map(fixed, trunc);
  const Eigen::Index dim = Eigen::Index(fixed.size());

  CHECK(defect(u * u.adjoint(), Matrix::Identity(dim, dim)) <= 1e-14);
  CHECK(defect(u.adjoint() * u, Matrix::Identity(dim, dim)) <= 1e-14);

  // condensate counting: U a*_0 a_0 U* = N - N_+
  Matrix lhs = u * transfer(fixed, 0, 0) * u.adjoint();
  Matrix rhs =
      double(n) * Matrix::Identity(dim, dim) - number_operator(trunc);
  CHECK(defect(lhs, rhs) <= 1e-12);

  for (int p = 1; p < modes; ++p) {
    // creation against the condensate: U a*_p a_0 U* = sqrt(N) b*_p
    lhs = u * transfer(fixed, p, 0) * u.adjoint();
    rhs = std::sqrt(double(n)) * modified_creation(trunc, p - 1);
    CHECK(defect(lhs, rhs) <= 1e-12);

    // annihilation against the condensate: U a*_0 a_p U* = sqrt(N) b_p
    lhs = u * transfer(fixed, 0, p) * u.adjoint();
    rhs = std::sqrt(double(n)) * modified_annihilation(trunc, p - 1);
    CHECK(defect(lhs, rhs) <= 1e-12);

    // purely excited transfers pass through untouched
    for (int q = 1; q < modes; ++q) {
      lhs = u * transfer(fixed, p, q) * u.adjoint();
      rhs = transfer(trunc, p - 1, q - 1);
      CHECK(defect(lhs, rhs) <= 1e-12);
    }
  }
}

TEST_CASE("modified commutators carry the 1/N corrections") {
  const int modes = 3;
  const int n = 5;
  auto basis = OccupationBasis::truncated(modes, n);
  const Eigen::Index dim = Eigen::Index(basis.size());
  Matrix num = number_operator(basis);

  for (int p = 0; p < modes; ++p) {
    Matrix bp = modified_annihilation(basis, p);
    Matrix bps = modified_creation(basis, p);
    CHECK(defect(bps, bp.adjoint()) <= 1e-14);

    for (int q = 0; q < modes; ++q) {
      Matrix bq = modified_annihilation(basis, q);
      Matrix bqs = modified_creation(basis, q);

      // [b_p, b_q] = 0 and [b*_p, b*_q] = 0
      CHECK(defect(bp * bq, bq * bp) <= 1e-13);
      CHECK(defect(bps * bqs, bqs * bps) <= 1e-13);

      // [b_p, b*_q] = delta_pq (1 - N_+/N) - a*_q a_p / N
      Matrix comm = bp * bqs - bqs * bp;
      Matrix expected = -transfer(basis, q, p) / double(n);
      if (p == q) {
        expected += Matrix::Identity(dim, dim) - num / double(n);
      }
      CHECK(defect(comm, expected) <= 1e-13);
    }
  }
}

TEST_CASE("vacuum pair expectation recovers the norm") {
  const int modes = 3;
  auto basis = OccupationBasis::truncated(modes, 5);
  Vector h = random_vector(modes, 23);

  Matrix field = b_star_field(basis, h) + b_field(basis, h);
  const std::size_t vac = basis.index_of(Occupation(modes, 0));
  Vector omega = Vector::Zero(Eigen::Index(basis.size()));
  omega[Eigen::Index(vac)] = 1.0;

  const Complex value = omega.dot(field * field * omega);
  CHECK(value.real() == doctest::Approx(h.squaredNorm()).epsilon(1e-13));
  CHECK(std::abs(value.imag()) <= 1e-13);
}

TEST_CASE("pair generator exponentiates to a unitary") {
  const int modes = 2;  // one +-p pair
  const int n = 6;
  auto basis = OccupationBasis::truncated(modes, n);
  const Eigen::Index dim = Eigen::Index(basis.size());

  std::vector<double> eta = {-0.35, -0.35};
  std::vector<std::size_t> pairing = {1, 0};
  Matrix b = bogoliubov_generator(basis, eta, pairing);

  CHECK(defect(b, -b.adjoint().eval()) <= 1e-13);

  Matrix u = matrix_exp(b);
  CHECK(defect(u * u.adjoint(), Matrix::Identity(dim, dim)) <= 1e-10);
  CHECK(defect(u.adjoint() * u, Matrix::Identity(dim, dim)) <= 1e-10);

  std::vector<std::size_t> broken = {0, 0};
  CHECK_THROWS_AS(bogoliubov_generator(basis, eta, broken),
                  std::invalid_argument);
}

TEST_CASE("matrix exponential agrees with spectral calculus and apply_exp") {
  Matrix h = random_hermitian(30, 31);
  Matrix anti = Complex(0.0, 1.0) * h;  // anti-Hermitian generator

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  Vector phase(30);
  for (int k = 0; k < 30; ++k) {
    phase[k] = std::exp(Complex(0.0, solver.eigenvalues()[k]));
  }
  Matrix spectral = solver.eigenvectors() * phase.asDiagonal() *
                    solver.eigenvectors().adjoint();

  Matrix direct = matrix_exp(anti);
  CHECK(defect(direct, spectral) <= 1e-11);

  Vector v = random_vector(30, 37);
  CHECK((apply_exp(anti, v) - direct * v).norm() <= 1e-11 * v.norm());

  // nilpotent sanity check with a closed form
  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 3.0;
  Matrix en = matrix_exp(nil);
  CHECK(std::abs(en(0, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(en(0, 1) - 3.0) <= 1e-15);
  CHECK(std::abs(en(1, 0)) <= 1e-15);
  CHECK(std::abs(en(1, 1) - 1.0) <= 1e-15);
}

TEST_CASE("pair rotation acts like a dressing up to 1/N remainders") {
  // e^-B b*(h) e^B minus its hyperbolic leading term shrinks roughly like
  // 1/N at fixed eta, checked by doubling N
  const int modes = 2;
  std::vector<double> eta = {-0.12, -0.12};
  std::vector<std::size_t> pairing = {1, 0};
  Vector h(modes);
  h[0] = Complex(0.8, -0.3);
  h[1] = Complex(-0.2, 0.5);

  auto remainder = [&](int n) {
    auto basis = OccupationBasis::truncated(modes, n);
    Matrix b = bogoliubov_generator(basis, eta, pairing);
    Matrix u = matrix_exp(b);
    Matrix dressed = u.adjoint() * b_star_field(basis, h) * u;

    Vector cosh_h(modes), sinh_h_swap(modes);
    for (int p = 0; p < modes; ++p) {
      cosh_h[p] = std::cosh(eta[std::size_t(p)]) * h[p];
      // the partner mode picks up the sinh part
      sinh_h_swap[pairing[std::size_t(p)]] =
          std::sinh(eta[std::size_t(p)]) * h[p];
    }
    // b(k) conjugates coefficients, so pass the conjugate to keep sum sinh(eta_p) h_p b_{-p}
    Matrix leading = b_star_field(basis, cosh_h) +
                     b_field(basis, sinh_h_swap.conjugate().eval());

    const std::size_t vac = basis.index_of(Occupation(modes, 0));
    Vector omega = Vector::Zero(Eigen::Index(basis.size()));
    omega[Eigen::Index(vac)] = 1.0;
    // probe on a state with one pair of excitations on top of the vacuum
    Vector probe = omega + 0.6 * (modified_creation(basis, 0) *
                                  (modified_creation(basis, 1) * omega));
    probe.normalize();
    return ((dressed - leading) * probe).norm();
  };

  const double r8 = remainder(8);
  const double r16 = remainder(16);
  CHECK(r8 > 1e-6);  // the remainder is genuinely there
  const double ratio = r16 / r8;
  CHECK(ratio > 0.2);
  CHECK(ratio < 0.8);
}
