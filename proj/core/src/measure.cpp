#include "bosestat/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bosestat::ot {

namespace {

constexpr double kMergeEps = 1e-12;
constexpr double kMassTol = 1e-9;

void format_double(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

DiscreteMeasure DiscreteMeasure::from_points(std::vector<double> atoms,
                                             std::vector<double> weights) {
  if (atoms.size() != weights.size())
    throw std::invalid_argument("measure: atom/weight size mismatch");
  if (atoms.empty()) throw std::invalid_argument("measure: empty support");
  for (double w : weights)
    if (w < 0.0 || !std::isfinite(w))
      throw std::invalid_argument("measure: weight must be finite and >= 0");
  for (double x : atoms)
    if (!std::isfinite(x))
      throw std::invalid_argument("measure: atom must be finite");

  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return atoms[i] < atoms[j]; });

  DiscreteMeasure m;
  for (std::size_t k : order) {
    if (!m.atoms_.empty() && atoms[k] - m.atoms_.back() <= kMergeEps) {
      m.weights_.back() += weights[k];
    } else {
      m.atoms_.push_back(atoms[k]);
      m.weights_.push_back(weights[k]);
    }
  }
  // drop merged-in zero weights
  std::size_t out = 0;
  for (std::size_t i = 0; i < m.atoms_.size(); ++i) {
    if (m.weights_[i] > 0.0) {
      m.atoms_[out] = m.atoms_[i];
      m.weights_[out] = m.weights_[i];
      ++out;
    }
  }
  m.atoms_.resize(out);
  m.weights_.resize(out);
  if (m.atoms_.empty())
    throw std::invalid_argument("measure: all weights vanish");

  double s = std::accumulate(m.weights_.begin(), m.weights_.end(), 0.0);
  if (std::fabs(s - 1.0) > kMassTol)
    throw std::invalid_argument("measure: weights sum to " + std::to_string(s) +
                                ", expected 1");
  for (double& w : m.weights_) w /= s;

  m.cum_.resize(m.weights_.size());
  double c = 0.0;
  for (std::size_t i = 0; i < m.weights_.size(); ++i) {
    c += m.weights_[i];
    m.cum_[i] = c;
  }
  m.cum_.back() = 1.0;
  return m;
}

DiscreteMeasure DiscreteMeasure::from_samples(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("measure: empty sample");
  std::vector<double> atoms(samples.begin(), samples.end());
  std::vector<double> weights(samples.size(), 1.0 / double(samples.size()));
  return from_points(std::move(atoms), std::move(weights));
}

DiscreteMeasure DiscreteMeasure::from_counts(
    std::span<const double> atoms, std::span<const std::uint64_t> counts) {
  if (atoms.size() != counts.size())
    throw std::invalid_argument("measure: atom/count size mismatch");
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0) throw std::invalid_argument("measure: zero total count");
  std::vector<double> a;
  std::vector<double> w;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (counts[i] == 0) continue;
    a.push_back(atoms[i]);
    w.push_back(double(counts[i]) / double(total));
  }
  return from_points(std::move(a), std::move(w));
}

DiscreteMeasure DiscreteMeasure::dirac(double x) {
  return from_points({x}, {1.0});
}

double DiscreteMeasure::cdf(double x) const {
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
  if (it == atoms_.begin()) return 0.0;
  return cum_[std::size_t(it - atoms_.begin()) - 1];
}

double DiscreteMeasure::quantile(double t) const {
  if (!(t > 0.0 && t < 1.0))
    throw std::domain_error("quantile: t must lie in (0,1)");
  // smallest atom index whose cumulative weight exceeds t
  auto it = std::upper_bound(cum_.begin(), cum_.end(), t);
  if (it == cum_.end()) --it;
  return atoms_[std::size_t(it - cum_.begin())];
}

double DiscreteMeasure::mean() const {
  double s = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) s += atoms_[i] * weights_[i];
  return s;
}

double DiscreteMeasure::integrate(
    const std::function<double(double)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) s += f(atoms_[i]) * weights_[i];
  return s;
}

void DiscreteMeasure::write_csv(std::ostream& os) const {
  os << "atom,weight\n";
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    format_double(os, atoms_[i]);
    os << ',';
    format_double(os, weights_[i]);
    os << '\n';
  }
}

DiscreteMeasure DiscreteMeasure::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("atom,weight", 0) != 0)
    throw std::invalid_argument("measure csv: missing atom,weight header");
  std::vector<double> a;
  std::vector<double> w;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string f0, f1;
    if (!std::getline(ss, f0, ',') || !std::getline(ss, f1))
      throw std::invalid_argument("measure csv: malformed row '" + line + "'");
    a.push_back(std::stod(f0));
    w.push_back(std::stod(f1));
  }
  return from_points(std::move(a), std::move(w));
}

double wasserstein(const DiscreteMeasure& a, const DiscreteMeasure& b,
                   double p) {
  if (!(p >= 1.0)) throw std::domain_error("wasserstein: requires p >= 1");
  const auto& ca = a.cumulative();
  const auto& cb = b.cumulative();
  // Walk the union of jump levels; both quantile functions are constant
  // between consecutive levels.
  std::size_t i = 0, j = 0;
  double prev = 0.0;
  double acc = 0.0;
  while (prev < 1.0) {
    double next = std::min(i < ca.size() ? ca[i] : 1.0,
                           j < cb.size() ? cb[j] : 1.0);
    double seg = next - prev;
    if (seg > 0.0) {
      double d = std::fabs(a.atoms()[std::min(i, a.size() - 1)] -
                           b.atoms()[std::min(j, b.size() - 1)]);
      acc += seg * std::pow(d, p);
    }
    if (i < ca.size() && ca[i] <= next) ++i;
    if (j < cb.size() && cb[j] <= next) ++j;
    prev = next;
  }
  return std::pow(acc, 1.0 / p);
}

double wasserstein_1_cdf(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  // integrate |F_a - F_b| over the merged atom grid; F's are constant
  // between consecutive atoms
  std::vector<double> grid;
  grid.reserve(a.size() + b.size());
  std::merge(a.atoms().begin(), a.atoms().end(), b.atoms().begin(),
             b.atoms().end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    double fa = a.cdf(grid[k]);
    double fb = b.cdf(grid[k]);
    acc += std::fabs(fa - fb) * (grid[k + 1] - grid[k]);
  }
  return acc;
}

double w1_dual_bound(const DiscreteMeasure& a, const DiscreteMeasure& b,
                     std::span<const LipschitzFunction> family) {
  double best = 0.0;
  for (const auto& lf : family) {
    if (lf.lipschitz_constant < 0.0)
      throw std::invalid_argument("w1_dual_bound: negative Lipschitz constant");
    if (lf.lipschitz_constant == 0.0) continue;
    double diff = a.integrate(lf.f) - b.integrate(lf.f);
    best = std::max(best, std::fabs(diff) / lf.lipschitz_constant);
  }
  return best;
}

double TransportPlan::cost(const DiscreteMeasure& a, const DiscreteMeasure& b,
                           double p) const {
  if (!(p >= 1.0)) throw std::domain_error("plan cost: requires p >= 1");
  double acc = 0.0;
  for (const auto& e : entries)
    acc += e.mass * std::pow(std::fabs(a.atoms()[e.src] - b.atoms()[e.dst]), p);
  return acc;
}

double TransportPlan::marginal_defect(const DiscreteMeasure& a,
                                      const DiscreteMeasure& b) const {
  std::vector<double> row(a.size(), 0.0);
  std::vector<double> col(b.size(), 0.0);
  for (const auto& e : entries) {
    row.at(e.src) += e.mass;
    col.at(e.dst) += e.mass;
  }
  double d = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i)
    d = std::max(d, std::fabs(row[i] - a.weights()[i]));
  for (std::size_t j = 0; j < col.size(); ++j)
    d = std::max(d, std::fabs(col[j] - b.weights()[j]));
  return d;
}

TransportPlan optimal_plan(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  TransportPlan plan;
  std::size_t i = 0, j = 0;
  double ra = a.weights()[0];
  double rb = b.weights()[0];
  while (i < a.size() && j < b.size()) {
    double m = std::min(ra, rb);
    if (m > 0.0) plan.entries.push_back({i, j, m});
    ra -= m;
    rb -= m;
    if (ra == 0.0) {
      ++i;
      if (i < a.size()) ra = a.weights()[i];
    }
    if (rb == 0.0) {
      ++j;
      if (j < b.size()) rb = b.weights()[j];
    }
  }
  return plan;
}

}  // namespace bosestat::ot
