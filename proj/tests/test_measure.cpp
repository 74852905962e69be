#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bosestat/measure.hpp"
#include "support/lp_oracle.hpp"

using bosestat::ot::DiscreteMeasure;
using bosestat::ot::LipschitzFunction;

namespace {

DiscreteMeasure random_measure(std::mt19937_64& gen, int max_atoms) {
  std::uniform_int_distribution<int> nd(1, max_atoms);
  std::uniform_real_distribution<double> xd(-5.0, 5.0);
  std::uniform_real_distribution<double> wd(0.05, 1.0);
  int n = nd(gen);
  std::vector<double> atoms(n), weights(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    atoms[i] = xd(gen);
    weights[i] = wd(gen);
    s += weights[i];
  }
  for (double& w : weights) w /= s;
  return DiscreteMeasure::from_points(atoms, weights);
}

double lp_w1(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  std::vector<std::vector<double>> c(a.size(), std::vector<double>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i][j] = std::fabs(a.atoms()[i] - b.atoms()[j]);
  return lp_oracle::transport_lp(a.weights(), b.weights(), c);
}

}  // namespace

TEST_CASE("construction sorts, merges and renormalizes") {
  auto m = DiscreteMeasure::from_points({2.0, 0.0, 2.0 + 5e-13},
                                        {0.25, 0.5, 0.25});
  CHECK(m.size() == 2);
  CHECK(m.atoms()[0] == 0.0);
  CHECK(m.atoms()[1] == 2.0);
  CHECK(m.weights()[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(m.cumulative().back() == 1.0);

  CHECK_THROWS_AS(DiscreteMeasure::from_points({0.0}, {-0.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure::from_points({0.0, 1.0}, {0.5, 0.6}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMeasure::from_points({}, {}), std::invalid_argument);
}

TEST_CASE("cdf and quantile on the two-atom example") {
  auto m = DiscreteMeasure::from_points({0.0, 1.0}, {0.5, 0.5});
  CHECK(m.cdf(-0.1) == 0.0);
  CHECK(m.cdf(0.0) == 0.5);
  CHECK(m.cdf(0.5) == 0.5);
  CHECK(m.cdf(1.0) == 1.0);
  CHECK(m.quantile(0.25) == 0.0);
  CHECK(m.quantile(0.5) == 1.0);  // sup{x : F(x) <= 1/2} = 1
  CHECK(m.quantile(0.75) == 1.0);
  CHECK_THROWS_AS(m.quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(m.quantile(1.0), std::domain_error);
}

TEST_CASE("empirical measures from samples and counts") {
  std::vector<double> xs{0.0, 0.0, 1.0};
  auto m = DiscreteMeasure::from_samples(xs);
  CHECK(m.size() == 2);
  CHECK(m.weights()[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  std::vector<double> atoms{-1.0, 0.5, 3.0};
  std::vector<std::uint64_t> counts{0, 3, 1};
  auto mc = DiscreteMeasure::from_counts(atoms, counts);
  CHECK(mc.size() == 2);
  CHECK(mc.atoms()[0] == 0.5);
  CHECK(mc.weights()[0] == doctest::Approx(0.75));
}

TEST_CASE("wasserstein distance closed forms") {
  auto d0 = DiscreteMeasure::dirac(0.0);
  auto d1 = DiscreteMeasure::dirac(1.5);
  for (double p : {1.0, 1.5, 2.0, 3.0})
    CHECK(bosestat::ot::wasserstein(d0, d1, p) ==
          doctest::Approx(1.5).epsilon(1e-14));

  // W_p(mu, mu) = 0
  auto m = DiscreteMeasure::from_points({0.0, 1.0, 4.0}, {0.2, 0.3, 0.5});
  CHECK(bosestat::ot::wasserstein(m, m, 2.0) == 0.0);

  // translation: atoms shifted by s moves every quantile by s
  auto ms = DiscreteMeasure::from_points({2.0, 3.0, 6.0}, {0.2, 0.3, 0.5});
  CHECK(bosestat::ot::wasserstein(m, ms, 1.0) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(bosestat::ot::wasserstein(m, ms, 2.0) ==
        doctest::Approx(2.0).epsilon(1e-14));

  CHECK_THROWS_AS(bosestat::ot::wasserstein(m, ms, 0.5), std::domain_error);
}

TEST_CASE("three formulas for W1 agree with the LP oracle") {
  std::mt19937_64 gen(20260819);
  for (int rep = 0; rep < 60; ++rep) {
    auto a = random_measure(gen, 12);
    auto b = random_measure(gen, 12);
    double w_quant = bosestat::ot::wasserstein(a, b, 1.0);
    double w_cdf = bosestat::ot::wasserstein_1_cdf(a, b);
    double w_lp = lp_w1(a, b);
    CHECK(std::fabs(w_quant - w_cdf) < 1e-12);
    CHECK(std::fabs(w_quant - w_lp) < 1e-10);
  }
}

TEST_CASE("higher p against the LP oracle") {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 30; ++rep) {
    auto a = random_measure(gen, 8);
    auto b = random_measure(gen, 8);
    for (double p : {2.0, 3.0}) {
      std::vector<std::vector<double>> c(a.size(),
                                         std::vector<double>(b.size()));
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
          c[i][j] = std::pow(std::fabs(a.atoms()[i] - b.atoms()[j]), p);
      double lp = lp_oracle::transport_lp(a.weights(), b.weights(), c);
      double w = bosestat::ot::wasserstein(a, b, p);
      CHECK(std::fabs(std::pow(w, p) - lp) < 1e-10);
    }
  }
}

TEST_CASE("wasserstein metric properties") {
  std::mt19937_64 gen(99);
  for (int rep = 0; rep < 40; ++rep) {
    auto a = random_measure(gen, 10);
    auto b = random_measure(gen, 10);
    auto c = random_measure(gen, 10);
    double ab = bosestat::ot::wasserstein(a, b, 1.0);
    double ba = bosestat::ot::wasserstein(b, a, 1.0);
    CHECK(std::fabs(ab - ba) < 1e-13);
    double ac = bosestat::ot::wasserstein(a, c, 1.0);
    double cb = bosestat::ot::wasserstein(c, b, 1.0);
    CHECK(ab <= ac + cb + 1e-12);
    // Jensen: W1 <= W2
    CHECK(ab <= bosestat::ot::wasserstein(a, b, 2.0) + 1e-12);
  }
}

TEST_CASE("monotone plan is feasible and optimal for every p >= 1") {
  std::mt19937_64 gen(31337);
  for (int rep = 0; rep < 40; ++rep) {
    auto a = random_measure(gen, 12);
    auto b = random_measure(gen, 12);
    auto plan = bosestat::ot::optimal_plan(a, b);
    CHECK(plan.marginal_defect(a, b) < 1e-12);
    // entries sweep both supports monotonically
    for (std::size_t k = 1; k < plan.entries.size(); ++k) {
      CHECK(plan.entries[k].src >= plan.entries[k - 1].src);
      CHECK(plan.entries[k].dst >= plan.entries[k - 1].dst);
    }
    for (double p : {1.0, 2.0}) {
      double w = bosestat::ot::wasserstein(a, b, p);
      CHECK(std::fabs(plan.cost(a, b, p) - std::pow(w, p)) < 1e-11);
    }
  }
}

TEST_CASE("dual bound never exceeds W1 and is tight for ordered supports") {
  std::vector<LipschitzFunction> family;
  family.push_back({[](double x) { return x; }, 1.0});
  family.push_back({[](double x) { return std::sin(x); }, 1.0});
  family.push_back({[](double x) { return 2.0 * std::fabs(x); }, 2.0});
  family.push_back({[](double) { return 1.0; }, 0.0});  // skipped

  std::mt19937_64 gen(5150);
  for (int rep = 0; rep < 40; ++rep) {
    auto a = random_measure(gen, 10);
    auto b = random_measure(gen, 10);
    double w1 = bosestat::ot::wasserstein(a, b, 1.0);
    double lb = bosestat::ot::w1_dual_bound(a, b, family);
    CHECK(lb <= w1 + 1e-12);
  }

  auto d0 = DiscreteMeasure::dirac(0.0);
  auto d2 = DiscreteMeasure::dirac(2.0);
  CHECK(bosestat::ot::w1_dual_bound(d0, d2, family) ==
        doctest::Approx(2.0).epsilon(1e-14));

  std::vector<LipschitzFunction> bad;
  bad.push_back({[](double x) { return x; }, -1.0});
  CHECK_THROWS_AS(bosestat::ot::w1_dual_bound(d0, d2, bad),
                  std::invalid_argument);
}

TEST_CASE("csv round trip") {
  auto m = DiscreteMeasure::from_points({-1.25, 0.0, 1.0 / 3.0},
                                        {0.125, 0.5, 0.375});
  std::stringstream ss;
  m.write_csv(ss);
  auto back = DiscreteMeasure::read_csv(ss);
  REQUIRE(back.size() == m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(back.atoms()[i] == m.atoms()[i]);
    CHECK(back.weights()[i] == m.weights()[i]);
  }
}
