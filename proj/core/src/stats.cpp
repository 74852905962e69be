#include "bosestat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bosestat::stats {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace {

// Dense m x m matrices with a base-10 exponent carried separately so that
// H^n stays representable for large n.
struct ScaledMatrix {
  std::vector<double> a;
  int m = 0;
  int exp10 = 0;

  double& at(int i, int j) { return a[std::size_t(i) * m + j]; }
  double at(int i, int j) const { return a[std::size_t(i) * m + j]; }
};

ScaledMatrix multiply(const ScaledMatrix& x, const ScaledMatrix& y) {
  ScaledMatrix r;
  r.m = x.m;
  r.exp10 = x.exp10 + y.exp10;
  r.a.assign(x.a.size(), 0.0);
  for (int i = 0; i < x.m; ++i)
    for (int k = 0; k < x.m; ++k) {
      double v = x.at(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < x.m; ++j) r.at(i, j) += v * y.at(k, j);
    }
  if (r.at(r.m / 2, r.m / 2) > 1e140) {
    for (double& v : r.a) v *= 1e-140;
    r.exp10 += 140;
  }
  return r;
}

ScaledMatrix power(const ScaledMatrix& x, int n) {
  if (n == 1) return x;
  ScaledMatrix half = power(x, n / 2);
  ScaledMatrix r = multiply(half, half);
  if (n % 2 == 1) r = multiply(x, r);
  return r;
}

}  // namespace

double ks_cdf(int n, double d) {
  if (n < 1) throw std::invalid_argument("ks_cdf: n must be positive");
  if (d <= 0.0) return 0.0;
  if (d >= 1.0) return 1.0;

  double s = d * d * n;
  if (s > 7.24 || (s > 3.76 && n > 99))
    return 1.0 - 2.0 * std::exp(-(2.000071 + 0.331 / std::sqrt(double(n)) +
                                  1.409 / double(n)) *
                                s);

  const int k = int(double(n) * d) + 1;
  const int m = 2 * k - 1;
  const double h = double(k) - double(n) * d;

  ScaledMatrix H;
  H.m = m;
  H.a.assign(std::size_t(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) H.at(i, j) = (i - j + 1 < 0) ? 0.0 : 1.0;
  for (int i = 0; i < m; ++i) {
    H.at(i, 0) -= std::pow(h, i + 1);
    H.at(m - 1, i) -= std::pow(h, m - i);
  }
  H.at(m - 1, 0) += (2.0 * h - 1.0 > 0.0) ? std::pow(2.0 * h - 1.0, m) : 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i - j + 1 > 0)
        for (int g = 1; g <= i - j + 1; ++g) H.at(i, j) /= double(g);

  ScaledMatrix Hn = power(H, n);
  double val = Hn.at(k - 1, k - 1);
  int e = Hn.exp10;
  for (int i = 1; i <= n; ++i) {
    val = val * double(i) / double(n);
    if (val < 1e-140) {
      val *= 1e140;
      e -= 140;
    }
  }
  double r = val * std::pow(10.0, e);
  return std::min(1.0, std::max(0.0, r));
}

KsResult normality_test(std::span<const double> x, double mean, double sd) {
  if (x.size() < 200)
    throw std::invalid_argument("normality_test: needs at least 200 samples");
  if (!(sd > 0.0))
    throw std::invalid_argument("normality_test: sd must be positive");

  std::vector<double> z(x.begin(), x.end());
  for (double& v : z) v = (v - mean) / sd;
  std::sort(z.begin(), z.end());

  const auto n = double(z.size());
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double f = normal_cdf(z[i]);
    d = std::max(d, f - double(i) / n);
    d = std::max(d, double(i + 1) / n - f);
  }
  double p = 1.0 - ks_cdf(int(z.size()), d);
  return {d, std::min(1.0, std::max(0.0, p))};
}

ScalingFit fit_power_law(std::span<const double> n, std::span<const double> y) {
  if (n.size() != y.size() || n.size() < 2)
    throw std::invalid_argument("fit_power_law: need two or more points");
  const auto k = double(n.size());
  std::vector<double> lx(n.size()), ly(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("fit_power_law: inputs must be positive");
    lx[i] = std::log(n[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0)
    throw std::invalid_argument("fit_power_law: degenerate abscissa grid");
  ScalingFit fit{};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ssr += r * r;
  }
  fit.slope_se =
      (n.size() > 2) ? std::sqrt(ssr / (k - 2.0) / sxx) : 0.0;
  fit.ci_lo = fit.slope - 1.96 * fit.slope_se;
  fit.ci_hi = fit.slope + 1.96 * fit.slope_se;
  return fit;
}

MeanSe mean_se(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("mean_se: empty sample");
  double m = 0.0;
  for (double v : x) m += v;
  m /= double(x.size());
  if (x.size() == 1) return {m, 0.0};
  double s2 = 0.0;
  for (double v : x) s2 += (v - m) * (v - m);
  s2 /= double(x.size() - 1);
  return {m, std::sqrt(s2 / double(x.size()))};
}

}  // namespace bosestat::stats
