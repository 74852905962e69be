#include "bosestat/bogoliubov.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bosestat::bogo {

double mu_p(double a0, double p_sq) {
  if (!(p_sq > 0.0)) {
    throw std::domain_error("mu_p is undefined at the zero mode");
  }
  const double shifted = p_sq + 16.0 * M_PI * a0;
  if (!(shifted > 0.0)) {
    throw std::domain_error("mu_p: p^2 + 16 pi a0 must be positive");
  }
  return 0.25 * std::log(p_sq / shifted);
}

std::vector<Complex> sigma_f(const SpectralObservable& observable,
                             const std::function<double(double)>& f,
                             double a0,
                             const lattice::MomentumLattice& modes) {
  if (observable.dim() != modes.size() + 1) {
    throw std::invalid_argument(
        "observable dimension must be lattice size + 1 (zero mode first)");
  }
  const Eigen::MatrixXcd fo = observable.apply_function(f);
  const Eigen::VectorXcd v = fo.col(0);  // q f(O) phi: entry 0 is dropped

  std::vector<Complex> sigma(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double mu = mu_p(a0, modes.momentum_sq(i));
    const std::size_t ni = modes.negation_index(i);
    sigma[i] = std::cosh(mu) * v[Eigen::Index(i) + 1] +
               std::sinh(mu) * v[Eigen::Index(ni) + 1];
  }
  return sigma;
}

CovarianceReport covariance_matrix(
    const std::vector<std::vector<Complex>>& sigmas) {
  if (sigmas.empty()) {
    throw std::invalid_argument("covariance_matrix needs at least one vector");
  }
  const std::size_t dim = sigmas.front().size();
  for (const auto& s : sigmas) {
    if (s.size() != dim) {
      throw std::invalid_argument("sigma vectors must share one length");
    }
  }
  const Eigen::Index m = Eigen::Index(sigmas.size());
  CovarianceReport report;
  report.covariance = Eigen::MatrixXd::Zero(m, m);
  report.gram_imag = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      Complex acc = 0.0;
      for (std::size_t p = 0; p < dim; ++p) {
        acc += std::conj(sigmas[std::size_t(i)][p]) * sigmas[std::size_t(j)][p];
      }
      report.covariance(i, j) = acc.real();
      report.gram_imag(i, j) = acc.imag();
    }
  }
  return report;
}

DressedDispersion dressed_dispersion(const std::function<double(double)>& vhat,
                                     const scattering::EtaCoefficients& eta,
                                     const lattice::MomentumLattice& modes,
                                     int n_particles) {
  if (n_particles < 1) {
    throw std::invalid_argument("n_particles must be positive");
  }
  if (eta.eta.size() != modes.size()) {
    throw std::invalid_argument("eta coefficients must match the lattice");
  }
  const double n = double(n_particles);

  DressedDispersion out;
  out.f.resize(modes.size());
  out.g.resize(modes.size());
  out.tau.resize(modes.size());

  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double p_sq = modes.momentum_sq(i);
    const double p_norm = std::sqrt(p_sq);

    double conv = vhat(p_norm / n) * (1.0 + eta.eta_zero / n);
    for (std::size_t q = 0; q < modes.size(); ++q) {
      double diff_sq = 0.0;
      for (int c = 0; c < 3; ++c) {
        const double d = modes.momentum(i)[c] - modes.momentum(q)[c];
        diff_sq += d * d;
      }
      conv += vhat(std::sqrt(diff_sq) / n) * eta.eta[q] / n;
    }

    const double sh = std::sinh(eta.eta[i]);
    const double ch = std::cosh(eta.eta[i]);
    const double f_p = p_sq * (sh * sh + ch * ch) + conv * (sh + ch) * (sh + ch);
    const double g_p = p_sq * sh * ch + conv * (sh + ch) * (sh + ch);

    if (!(f_p > 0.0) || std::abs(g_p) >= f_p) {
      const auto& c = modes.coords()[i];
      char msg[128];
      std::snprintf(msg, sizeof(msg),
                    "dressed dispersion is not diagonalizable at mode "
                    "(%d, %d, %d): F = %.6g, G = %.6g",
                    c[0], c[1], c[2], f_p, g_p);
      throw std::runtime_error(msg);
    }
    out.f[i] = f_p;
    out.g[i] = g_p;
    out.tau[i] = 0.5 * std::atanh(-g_p / f_p);
  }
  return out;
}

}  // namespace bosestat::bogo
