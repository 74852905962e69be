#include "bosestat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace bosestat::scattering {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double x) {
  double ax = std::fabs(x);
  if (ax < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// Grid of RK4 nodes split into runs of uniform spacing, one run per smooth
// segment of the potential.
struct OdeGrid {
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> du;
  std::vector<std::size_t> seg;  // offsets opening each uniform run
};

// Even cell counts per smooth segment, proportional to length. Doubling the
// total refines every segment exactly 2:1.
std::vector<int> allocate_cells(const std::vector<double>& breaks,
                                int cells_total) {
  const double total_len = breaks.back() - breaks.front();
  std::vector<int> cells(breaks.size() - 1);
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    int c = int(std::lround(double(cells_total) *
                            (breaks[s + 1] - breaks[s]) / total_len));
    c = std::max(8, c);
    if (c % 2 == 1) ++c;
    cells[s] = c;
  }
  return cells;
}

// Integrates u'' = g(s, r) u with u(0) = 0, u'(0) = 1 across the given
// breakpoints with the per-segment cell counts; g receives the segment index
// so that one-sided limits are used at discontinuities.
OdeGrid integrate_radial(const std::function<double(std::size_t, double)>& g,
                         const std::vector<double>& breaks,
                         const std::vector<int>& seg_cells) {
  OdeGrid grid;
  grid.r.push_back(breaks.front());
  grid.u.push_back(0.0);
  grid.du.push_back(1.0);
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s];
    const double b = breaks[s + 1];
    const int cells = seg_cells[s];
    const double h = (b - a) / cells;
    grid.seg.push_back(grid.r.size() - 1);
    double u = grid.u.back();
    double du = grid.du.back();
    for (int i = 0; i < cells; ++i) {
      const double r0 = a + h * i;
      // RK4 for y = (u, u')
      auto f1u = du, f1v = g(s, r0) * u;
      auto f2u = du + 0.5 * h * f1v,
           f2v = g(s, r0 + 0.5 * h) * (u + 0.5 * h * f1u);
      auto f3u = du + 0.5 * h * f2v,
           f3v = g(s, r0 + 0.5 * h) * (u + 0.5 * h * f2u);
      auto f4u = du + h * f3v, f4v = g(s, r0 + h) * (u + h * f3u);
      u += h / 6.0 * (f1u + 2.0 * f2u + 2.0 * f3u + f4u);
      du += h / 6.0 * (f1v + 2.0 * f2v + 2.0 * f3v + f4v);
      grid.r.push_back(i + 1 == cells ? b : r0 + h);
      grid.u.push_back(u);
      grid.du.push_back(du);
    }
  }
  return grid;
}

// Composite Simpson of `values` against the grid's uniform runs.
double simpson(const std::vector<double>& r,
               const std::vector<std::size_t>& seg,
               const std::vector<double>& values, std::size_t stop) {
  double acc = 0.0;
  for (std::size_t s = 0; s < seg.size(); ++s) {
    std::size_t i0 = seg[s];
    std::size_t i1 = (s + 1 < seg.size()) ? seg[s + 1] : values.size() - 1;
    i1 = std::min(i1, stop);
    if (i1 <= i0) break;
    const double h = (r[i1] - r[i0]) / double(i1 - i0);
    double sum = values[i0] + values[i1];
    for (std::size_t i = i0 + 1; i < i1; ++i)
      sum += values[i] * (((i - i0) % 2 == 1) ? 4.0 : 2.0);
    acc += sum * h / 3.0;
  }
  return acc;
}

}  // namespace

RadialPotential RadialPotential::soft_sphere(double v0, double radius) {
  if (v0 < 0.0) throw std::invalid_argument("potential: v0 must be >= 0");
  if (radius <= 0.0)
    throw std::invalid_argument("potential: radius must be positive");
  RadialPotential p;
  if (v0 == 0.0) return p;  // zero potential
  p.kind_ = Kind::soft_sphere;
  p.v0_ = v0;
  p.radius_ = radius;
  p.breaks_ = {0.0, radius};
  return p;
}

RadialPotential RadialPotential::tabulated(std::vector<double> r,
                                           std::vector<double> v) {
  if (r.size() != v.size() || r.size() < 2)
    throw std::invalid_argument("potential: need two or more profile nodes");
  if (r.front() != 0.0)
    throw std::invalid_argument("potential: profile must start at r = 0");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] <= r[i - 1])
      throw std::invalid_argument("potential: radii must increase strictly");
  bool all_zero = true;
  for (double x : v) {
    if (x < 0.0) throw std::invalid_argument("potential: profile must be >= 0");
    if (x != 0.0) all_zero = false;
  }
  RadialPotential p;
  if (all_zero) return p;
  p.kind_ = Kind::tabulated;
  p.radius_ = r.back();
  p.breaks_ = r;
  p.nodes_r_ = std::move(r);
  p.nodes_v_ = std::move(v);
  return p;
}

RadialPotential RadialPotential::zero() { return RadialPotential{}; }

double RadialPotential::operator()(double r) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::soft_sphere:
      return r <= radius_ ? v0_ : 0.0;
    case Kind::tabulated: {
      if (r < 0.0 || r > radius_) return 0.0;
      auto it = std::upper_bound(nodes_r_.begin(), nodes_r_.end(), r);
      if (it == nodes_r_.begin()) return nodes_v_.front();
      std::size_t hi = std::size_t(it - nodes_r_.begin());
      if (hi == nodes_r_.size()) return nodes_v_.back();
      std::size_t lo = hi - 1;
      double t = (r - nodes_r_[lo]) / (nodes_r_[hi] - nodes_r_[lo]);
      return nodes_v_[lo] + t * (nodes_v_[hi] - nodes_v_[lo]);
    }
  }
  return 0.0;
}

double RadialPotential::support_radius() const { return radius_; }

double RadialPotential::value_in_segment(std::size_t s, double r) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::soft_sphere:
      return s == 0 ? v0_ : 0.0;
    case Kind::tabulated: {
      if (s + 1 >= nodes_r_.size()) return 0.0;
      double t = (r - nodes_r_[s]) / (nodes_r_[s + 1] - nodes_r_[s]);
      return nodes_v_[s] + t * (nodes_v_[s + 1] - nodes_v_[s]);
    }
  }
  return 0.0;
}

bool RadialPotential::is_zero() const { return kind_ == Kind::zero; }

double RadialPotential::fourier(double k) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::soft_sphere: {
      const double x = k * radius_;
      if (std::fabs(x) < 1e-3) {
        const double r3 = radius_ * radius_ * radius_;
        const double r2 = radius_ * radius_;
        return 4.0 * kPi * v0_ * r3 *
               (1.0 / 3.0 - k * k * r2 / 30.0 +
                k * k * k * k * r2 * r2 / 840.0);
      }
      return 4.0 * kPi * v0_ * (std::sin(x) - x * std::cos(x)) / (k * k * k);
    }
    case Kind::tabulated: {
      // Simpson per linear segment of the profile
      double acc = 0.0;
      for (std::size_t s = 0; s + 1 < nodes_r_.size(); ++s) {
        const int cells = 256;
        const double a = nodes_r_[s];
        const double h = (nodes_r_[s + 1] - a) / cells;
        double sum = 0.0;
        for (int i = 0; i <= cells; ++i) {
          double r = a + h * i;
          double val = r * r * (*this)(r)*sinc(k * r);
          double c = (i == 0 || i == cells) ? 1.0 : ((i % 2 == 1) ? 4.0 : 2.0);
          sum += c * val;
        }
        acc += sum * h / 3.0;
      }
      return 4.0 * kPi * acc;
    }
  }
  return 0.0;
}

ScatteringSolution solve_zero_energy(const RadialPotential& V, double r_max,
                                     int grid_size) {
  if (grid_size < 16)
    throw std::invalid_argument("solve_zero_energy: grid_size below 16");

  ScatteringSolution sol;
  if (V.is_zero()) {
    // f = 1 identically, a0 = 0
    if (r_max <= 0.0)
      throw std::invalid_argument("solve_zero_energy: r_max must be positive");
    int n = grid_size;
    sol.r.resize(std::size_t(n) + 1);
    sol.f.assign(std::size_t(n) + 1, 1.0);
    for (int i = 0; i <= n; ++i) sol.r[std::size_t(i)] = r_max * i / n;
    sol.seg = {0};
    sol.support_end = 0;
    return sol;
  }

  const double R = V.support_radius();
  if (r_max < 4.0 * R)
    throw std::invalid_argument(
        "solve_zero_energy: r_max must be at least 4 * support radius");

  auto g = [&V](std::size_t s, double r) { return 0.5 * V.value_in_segment(s, r); };
  std::vector<int> coarse_cells = allocate_cells(V.breakpoints(), grid_size / 2);
  std::vector<int> fine_cells = coarse_cells;
  for (int& c : fine_cells) c *= 2;
  OdeGrid coarse = integrate_radial(g, V.breakpoints(), coarse_cells);
  OdeGrid fine = integrate_radial(g, V.breakpoints(), fine_cells);

  auto extract_a0 = [R](const OdeGrid& gr) {
    return R - gr.u.back() / gr.du.back();
  };
  const double a0_c = extract_a0(coarse);
  const double a0_f = extract_a0(fine);
  const double alpha_c = coarse.du.back();
  const double alpha_f = fine.du.back();

  sol.a0 = a0_f;
  sol.residual = std::fabs(a0_f - a0_c) / 15.0;

  sol.r = fine.r;
  sol.seg = fine.seg;
  sol.f.resize(fine.u.size());
  sol.f[0] = 1.0 / alpha_f;  // limit of u / (alpha r) at r = 0 with u'(0) = 1
  for (std::size_t i = 1; i < fine.u.size(); ++i)
    sol.f[i] = fine.u[i] / (alpha_f * fine.r[i]);
  sol.support_end = sol.r.size() - 1;

  // step-halving estimate on f at shared nodes (fine grid refines coarse 2:1)
  for (std::size_t i = 1; i < coarse.r.size(); ++i) {
    double fc = coarse.u[i] / (alpha_c * coarse.r[i]);
    double ff = sol.f[2 * i];
    sol.residual = std::max(sol.residual, std::fabs(ff - fc) / 15.0);
  }

  // exact affine tail f = (r - a0) / r out to r_max
  const double h_tail = R / double(fine.r.size() - 1);
  int n_tail = int(std::ceil((r_max - R) / std::max(h_tail, R / 64.0)));
  n_tail = std::max(n_tail, 8);
  const double ht = (r_max - R) / n_tail;
  for (int i = 1; i <= n_tail; ++i) {
    double r = (i == n_tail) ? r_max : R + ht * i;
    sol.r.push_back(r);
    sol.f.push_back((r - sol.a0) / r);
  }
  return sol;
}

double scattering_length_integral(const ScatteringSolution& s,
                                  const RadialPotential& V) {
  if (V.is_zero()) return 0.0;
  // (1/8pi) int V f dx = (1/2) int_0^R V(r) f(r) r^2 dr
  std::vector<double> integrand(s.support_end + 1);
  for (std::size_t i = 0; i <= s.support_end; ++i)
    integrand[i] = V(s.r[i]) * s.f[i] * s.r[i] * s.r[i];
  return 0.5 * simpson(s.r, s.seg, integrand, s.support_end);
}

namespace {

// boundary functional whose lowest zero in lambda is the Neumann eigenvalue
double neumann_boundary(const RadialPotential& V,
                        const std::vector<double>& breaks, double rho,
                        double lambda, const std::vector<int>& cells,
                        OdeGrid* out = nullptr) {
  auto g = [&V, lambda](std::size_t s, double r) {
    return 0.5 * V.value_in_segment(s, r) - lambda;
  };
  OdeGrid grid = integrate_radial(g, breaks, cells);
  double w = rho * grid.du.back() - grid.u.back();
  if (out) *out = std::move(grid);
  return w;
}

double bisect_lambda(const RadialPotential& V,
                     const std::vector<double>& breaks, double rho,
                     const std::vector<int>& cells) {
  double lo = 0.0;
  double hi = 1e-9;
  double w_hi = neumann_boundary(V, breaks, rho, hi, cells);
  int guard = 0;
  while (w_hi > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 120 || hi > 1e9)
      throw std::runtime_error("solve_neumann: failed to bracket eigenvalue");
    w_hi = neumann_boundary(V, breaks, rho, hi, cells);
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (neumann_boundary(V, breaks, rho, mid, cells) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

NeumannSolution solve_neumann(const RadialPotential& V, double rho,
                              int grid_size) {
  if (grid_size < 16)
    throw std::invalid_argument("solve_neumann: grid_size below 16");
  if (rho <= 0.0)
    throw std::invalid_argument("solve_neumann: rho must be positive");
  if (!V.is_zero() && rho <= V.support_radius())
    throw std::invalid_argument(
        "solve_neumann: ball must contain the potential support");

  NeumannSolution sol;
  sol.rho = rho;
  if (V.is_zero()) {
    sol.lambda = 0.0;
    int n = std::max(grid_size, 16);
    if (n % 2 == 1) ++n;
    sol.r.resize(std::size_t(n) + 1);
    for (int i = 0; i <= n; ++i) sol.r[std::size_t(i)] = rho * i / n;
    sol.f.assign(sol.r.size(), 1.0);
    sol.seg = {0};
    return sol;
  }

  std::vector<double> breaks = V.breakpoints();
  breaks.push_back(rho);
  std::vector<int> coarse_cells = allocate_cells(breaks, grid_size / 2);
  std::vector<int> fine_cells = coarse_cells;
  for (int& c : fine_cells) c *= 2;

  const double lam_c = bisect_lambda(V, breaks, rho, coarse_cells);
  const double lam_f = bisect_lambda(V, breaks, rho, fine_cells);

  OdeGrid fine, coarse;
  neumann_boundary(V, breaks, rho, lam_f, fine_cells, &fine);
  neumann_boundary(V, breaks, rho, lam_c, coarse_cells, &coarse);

  sol.lambda = lam_f;
  sol.residual = std::fabs(lam_f - lam_c) / 15.0;

  const double cf = fine.u.back() / rho;
  const double cc = coarse.u.back() / rho;
  sol.r = fine.r;
  sol.seg = fine.seg;
  sol.f.resize(fine.u.size());
  sol.f[0] = 1.0 / cf;
  for (std::size_t i = 1; i < fine.u.size(); ++i)
    sol.f[i] = fine.u[i] / (cf * fine.r[i]);

  if (2 * (coarse.r.size() - 1) == fine.r.size() - 1) {
    for (std::size_t i = 1; i < coarse.r.size(); ++i) {
      double fc = coarse.u[i] / (cc * coarse.r[i]);
      sol.residual =
          std::max(sol.residual, std::fabs(sol.f[2 * i] - fc) / 15.0);
    }
  }

  // f'(rho) = (rho u'(rho) - u(rho)) / (c rho^2)
  sol.boundary_defect = std::fabs(
      (rho * fine.du.back() - fine.u.back()) / (cf * rho * rho));
  return sol;
}

double NeumannSolution::w(double radius) const {
  if (radius < 0.0 || radius > rho || r.empty()) return 0.0;
  auto it = std::upper_bound(r.begin(), r.end(), radius);
  if (it == r.begin()) return 1.0 - f.front();
  std::size_t hi = std::size_t(it - r.begin());
  if (hi >= r.size()) return 1.0 - f.back();
  std::size_t lo = hi - 1;
  double t = (radius - r[lo]) / (r[hi] - r[lo]);
  return 1.0 - (f[lo] + t * (f[hi] - f[lo]));
}

double NeumannSolution::w_hat(double k) const {
  std::vector<double> integrand(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    integrand[i] = r[i] * r[i] * (1.0 - f[i]) * sinc(k * r[i]);
  return 4.0 * kPi * simpson(r, seg, integrand, r.size() - 1);
}

EtaCoefficients eta_coefficients(const NeumannSolution& sol,
                                 const lattice::MomentumLattice& modes,
                                 int n_particles, EtaConvention convention) {
  if (n_particles < 1)
    throw std::invalid_argument("eta_coefficients: need n_particles >= 1");
  const double n = double(n_particles);
  EtaCoefficients out;
  out.eta.resize(modes.size());

  if (convention == EtaConvention::as_written) {
    for (std::size_t i = 0; i < modes.size(); ++i)
      out.eta[i] = -sol.w_hat(modes.momentum_norm(i) / n) / (n * n);
    out.eta_zero = -sol.w_hat(0.0) / (n * n);
    return out;
  }

  // rescaled: w_N(x) = w(N x) on the ball of radius rho / N,
  // eta_p = -N * 4 pi int x^2 w_N(x) sinc(|p| x) dx
  auto eta_at = [&](double p_norm) {
    std::vector<double> integrand(sol.r.size());
    for (std::size_t i = 0; i < sol.r.size(); ++i) {
      double x = sol.r[i] / n;
      integrand[i] = x * x * (1.0 - sol.f[i]) * sinc(p_norm * x);
    }
    // grid in x is the stored grid scaled by 1/N
    std::vector<double> xs(sol.r.size());
    for (std::size_t i = 0; i < sol.r.size(); ++i) xs[i] = sol.r[i] / n;
    return -n * 4.0 * kPi * simpson(xs, sol.seg, integrand, xs.size() - 1);
  };
  for (std::size_t i = 0; i < modes.size(); ++i)
    out.eta[i] = eta_at(modes.momentum_norm(i));
  out.eta_zero = eta_at(0.0);
  return out;
}

}  // namespace bosestat::scattering
