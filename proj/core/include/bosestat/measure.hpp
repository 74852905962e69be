#pragma once

// Discrete probability measures on the real line and exact one-dimensional
// optimal transport distances computed through quantile functions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace bosestat::ot {

// Finitely supported probability measure. Atoms are stored sorted strictly
// increasing, weights are positive and sum to one.
class DiscreteMeasure {
 public:
  // Builds a measure from parallel atom/weight arrays. Atoms closer than
  // 1e-12 are merged (first position wins, weights add). Zero weights are
  // dropped; a negative weight throws std::invalid_argument. The weight sum
  // must equal 1 within 1e-9 and is then renormalized exactly.
  static DiscreteMeasure from_points(std::vector<double> atoms,
                                     std::vector<double> weights);

  // Empirical measure of a finite sample: distinct values weighted by
  // relative multiplicity.
  static DiscreteMeasure from_samples(std::span<const double> samples);

  // Empirical measure from occupation counts over a fixed atom list.
  // Atoms with zero count are dropped.
  static DiscreteMeasure from_counts(std::span<const double> atoms,
                                     std::span<const std::uint64_t> counts);

  static DiscreteMeasure dirac(double x);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }

  // Cumulative weights; back() is exactly 1.
  const std::vector<double>& cumulative() const { return cum_; }

  // Right-continuous distribution function F(x) = mu((-inf, x]).
  double cdf(double x) const;

  // Generalized inverse F^{-1}(t) = sup{ x : F(x) <= t } for t in (0,1);
  // throws std::domain_error outside the open interval.
  double quantile(double t) const;

  double mean() const;
  double integrate(const std::function<double(double)>& f) const;

  // CSV with header "atom,weight", 17 significant digits, LF line ends.
  void write_csv(std::ostream& os) const;
  static DiscreteMeasure read_csv(std::istream& is);

 private:
  DiscreteMeasure() = default;

  std::vector<double> atoms_;
  std::vector<double> weights_;
  std::vector<double> cum_;
};

// Exact p-Wasserstein distance, p >= 1, as the L^p((0,1)) distance of the
// two quantile functions evaluated piecewise on the merged jump grid.
// p < 1 throws std::domain_error.
double wasserstein(const DiscreteMeasure& a, const DiscreteMeasure& b,
                   double p);

// W1 as the L1 distance between distribution functions. Agrees with
// wasserstein(a, b, 1) to rounding.
double wasserstein_1_cdf(const DiscreteMeasure& a, const DiscreteMeasure& b);

struct LipschitzFunction {
  std::function<double(double)> f;
  double lipschitz_constant = 1.0;
};

// Kantorovich-Rubinstein lower bound over a finite family:
// max_f |integral of f d(a-b)| / Lip(f). Functions with Lip(f) == 0 are
// skipped; a negative constant throws std::invalid_argument.
double w1_dual_bound(const DiscreteMeasure& a, const DiscreteMeasure& b,
                     std::span<const LipschitzFunction> family);

// Sparse coupling between two discrete measures, indices into their atom
// lists.
struct TransportPlan {
  struct Entry {
    std::size_t src;
    std::size_t dst;
    double mass;
  };
  std::vector<Entry> entries;

  // Transport cost sum(mass * |x - y|^p); for p = 1 this equals W1 when the
  // plan is optimal.
  double cost(const DiscreteMeasure& a, const DiscreteMeasure& b,
              double p) const;

  // Largest row/column marginal violation against the two measures.
  double marginal_defect(const DiscreteMeasure& a,
                         const DiscreteMeasure& b) const;
};

// Monotone coupling obtained by sweeping both cumulative distributions once;
// optimal on the line for every cost |x - y|^p with p >= 1.
TransportPlan optimal_plan(const DiscreteMeasure& a, const DiscreteMeasure& b);

}  // namespace bosestat::ot
