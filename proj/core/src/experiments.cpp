#include "bosestat/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "bosestat/fock.hpp"
#include "bosestat/lanczos.hpp"
#include "bosestat/rng.hpp"

namespace bosestat::experiments {

namespace {

constexpr double kNeumannBall = 0.25;  // rho = N * this
constexpr std::size_t kMaxFockDim = 20000;

void append_num(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

// Per grid point sampling context. Draws are counts per category; the
// category values are the outcome atoms.
struct Context {
  std::vector<double> values;
  std::vector<double> probs;  // nonempty selects the multinomial path
  std::shared_ptr<const qsim::MeasurementSampler> sampler;
  // kept for the exact quadratic form on model states
  std::shared_ptr<const fock::OccupationBasis> basis;
  std::shared_ptr<const Eigen::VectorXcd> state;
  ot::DiscreteMeasure reference;
};

std::vector<std::uint64_t> draw_counts(const Context& ctx, rng::Stream& stream,
                                       int n) {
  if (!ctx.probs.empty()) {
    return stream.multinomial(std::uint64_t(n), ctx.probs);
  }
  const std::vector<int> counts = ctx.sampler->draw_counts(stream);
  return std::vector<std::uint64_t>(counts.begin(), counts.end());
}

const bogo::SpectralObservable& require_observable(
    const ExperimentConfig& config) {
  if (!config.observable) {
    throw std::invalid_argument("experiment needs an observable");
  }
  return *config.observable;
}

const qsim::TorusModel& require_torus(const ExperimentConfig& config) {
  if (!config.torus) {
    throw std::invalid_argument("model requires the torus physics context");
  }
  const qsim::TorusModel& torus = *config.torus;
  if (std::size_t(require_observable(config).dim()) !=
      torus.excited_modes().size() + 1) {
    throw std::invalid_argument(
        "observable dimension does not match the mode table");
  }
  return torus;
}

double resolve_a0(const ExperimentConfig& config) {
  if (config.a0) return *config.a0;
  if (!config.torus) return 0.0;
  const auto& potential = config.torus->potential();
  if (potential.is_zero()) return 0.0;
  const double r_max = 6.0 * potential.support_radius();
  return scattering::solve_zero_energy(potential, r_max, 4096).a0;
}

std::vector<double> dressing_angles(const qsim::TorusModel& torus, int n) {
  const auto& potential = torus.potential();
  const auto& modes = torus.excited_modes();
  if (potential.is_zero()) {
    return std::vector<double>(modes.size(), 0.0);
  }
  const auto neumann =
      scattering::solve_neumann(potential, kNeumannBall * n, 2048);
  const auto eta = scattering::eta_coefficients(
      neumann, modes, n, scattering::EtaConvention::as_written);
  const auto dispersion = bogo::dressed_dispersion(
      [&potential](double k) { return potential.fourier(k); }, eta, modes, n);
  return dispersion.tau;
}

Context make_context(const ExperimentConfig& config, int n) {
  switch (config.model) {
    case ModelKind::product: {
      auto nu = bogo::nu_phi(require_observable(config));
      return Context{nu.atoms(), nu.weights(), nullptr, nullptr, nullptr, nu};
    }
    case ModelKind::iid_surrogate: {
      auto nu = config.surrogate ? *config.surrogate
                                 : bogo::nu_phi(require_observable(config));
      return Context{nu.atoms(), nu.weights(), nullptr, nullptr, nullptr, nu};
    }
    case ModelKind::quasifree: {
      const auto& obs = require_observable(config);
      const auto& torus = require_torus(config);
      const int d = torus.n_modes();
      auto basis = std::make_shared<fock::OccupationBasis>(
          fock::OccupationBasis::fixed_total(d, n));
      if (basis->size() > kMaxFockDim) {
        throw std::invalid_argument(
            "quasifree state construction is desk scale; shrink N or the "
            "mode table");
      }
      const auto& modes = torus.excited_modes();
      std::vector<std::size_t> pairing(modes.size());
      for (std::size_t i = 0; i < modes.size(); ++i) {
        pairing[i] = modes.negation_index(i);
      }
      auto state = std::make_shared<Eigen::VectorXcd>(
          qsim::quasifree_state(*basis, dressing_angles(torus, n), pairing));
      auto sampler = std::make_shared<qsim::MeasurementSampler>(
          *basis, *state, obs);
      return Context{sampler->atoms(), {}, sampler, basis, state,
                     bogo::nu_phi(obs)};
    }
    case ModelKind::exact_ground_state: {
      const auto& obs = require_observable(config);
      const auto& torus = require_torus(config);
      qsim::TorusModel resized(torus.excited_modes(), n, torus.potential());
      auto op = qsim::build_hamiltonian(resized);
      auto gs = qsim::ground_state(op);
      auto basis = std::make_shared<fock::OccupationBasis>(op.basis);
      auto state = std::make_shared<Eigen::VectorXcd>(std::move(gs.state));
      auto sampler = std::make_shared<qsim::MeasurementSampler>(
          *basis, *state, obs);
      return Context{sampler->atoms(), {}, sampler, basis, state,
                     bogo::nu_phi(obs)};
    }
  }
  throw std::invalid_argument("unknown model kind");
}

void validate(const ExperimentConfig& config, bool clt) {
  if (config.n_grid.empty()) {
    throw std::invalid_argument("N grid must not be empty");
  }
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] < 1) {
      throw std::invalid_argument("N grid entries must be positive");
    }
    if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
      throw std::invalid_argument("N grid must be strictly increasing");
    }
  }
  if (config.replicas < 1) {
    throw std::invalid_argument("need at least one replica");
  }
  if (clt) {
    if (config.replicas < 100) {
      throw std::invalid_argument("CLT runs need at least 100 replicas");
    }
    if (config.functions.empty()) {
      throw std::invalid_argument("CLT runs need at least one function");
    }
  } else {
    for (double d : config.deltas) {
      if (d <= 0.0) throw std::invalid_argument("deltas must be positive");
    }
  }
}

// Replicas are distributed over workers by an atomic counter; results land
// in slots indexed by replica, so aggregation order never depends on the
// schedule. The first failing replica wins error reporting.
void run_replicas(int replicas, int n_threads, std::uint64_t seed,
                  std::uint64_t n,
                  const std::function<void(int, rng::Stream&)>& body) {
  const int workers = std::max(1, n_threads);
  std::atomic<int> next{0};
  std::mutex error_mutex;
  int error_replica = -1;
  std::string error_message;

  auto work = [&]() {
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= replicas) break;
      try {
        rng::Stream stream = rng::Stream::replica(seed, n, std::uint64_t(r));
        body(r, stream);
      } catch (const std::exception& ex) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (error_replica < 0 || r < error_replica) {
          error_replica = r;
          error_message = ex.what();
        }
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error_replica >= 0) {
    throw std::runtime_error("replica " + std::to_string(error_replica) +
                             ": " + error_message);
  }
}

RunRecord snapshot(const ExperimentConfig& config) {
  RunRecord record;
  record.model = config.model;
  record.n_grid = config.n_grid;
  record.replicas = config.replicas;
  record.deltas = config.deltas;
  for (const auto& f : config.functions) {
    record.function_names.push_back(f.name);
  }
  record.seed = config.seed;
  return record;
}

struct MeanError {
  double mean = 0.0;
  double se = 0.0;
};

MeanError mean_and_error(const std::vector<double>& xs) {
  MeanError out;
  for (double x : xs) out.mean += x;
  out.mean /= double(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / double(xs.size() - 1) / double(xs.size()));
  }
  return out;
}

// model covariance of the linear statistics, by model kind
Eigen::MatrixXd model_covariance(const ExperimentConfig& config,
                                 const Context& ctx, int n) {
  const int m = int(config.functions.size());
  Eigen::MatrixXd sigma(m, m);
  switch (config.model) {
    case ModelKind::product:
    case ModelKind::iid_surrogate: {
      std::vector<double> means(std::size_t(m), 0.0);
      for (int j = 0; j < m; ++j) {
        means[std::size_t(j)] =
            ctx.reference.integrate(config.functions[std::size_t(j)].fn);
      }
      for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
          const auto& fj = config.functions[std::size_t(j)].fn;
          const auto& fk = config.functions[std::size_t(k)].fn;
          sigma(j, k) = ctx.reference.integrate([&](double x) {
            return (fj(x) - means[std::size_t(j)]) *
                   (fk(x) - means[std::size_t(k)]);
          });
        }
      }
      return sigma;
    }
    case ModelKind::quasifree:
    case ModelKind::exact_ground_state:
      break;
  }

  if (config.model == ModelKind::quasifree) {
    // polarization of the exact quadratic form; f(O) and g(O) commute, so
    // this recovers the full model covariance
    const auto& obs = require_observable(config);
    for (int j = 0; j < m; ++j) {
      for (int k = j; k < m; ++k) {
        const auto& fj = config.functions[std::size_t(j)].fn;
        const auto& fk = config.functions[std::size_t(k)].fn;
        const double plus = qsim::variance_lhs(
            *ctx.basis, *ctx.state, obs,
            [&](double x) { return fj(x) + fk(x); });
        const double minus = qsim::variance_lhs(
            *ctx.basis, *ctx.state, obs,
            [&](double x) { return fj(x) - fk(x); });
        sigma(j, k) = sigma(k, j) = double(n) * (plus - minus) / 4.0;
      }
    }
    return sigma;
  }

  // exact ground state: the asymptotic covariance from the dressed sigma
  // vectors, with the scattering length solved from the potential
  const auto& torus = require_torus(config);
  const double a0 = resolve_a0(config);
  std::vector<std::vector<bogo::Complex>> sigmas;
  sigmas.reserve(std::size_t(m));
  for (const auto& f : config.functions) {
    sigmas.push_back(bogo::sigma_f(require_observable(config), f.fn, a0,
                                   torus.excited_modes()));
  }
  return bogo::covariance_matrix(sigmas).covariance;
}

double ks_cdf(int n, double d);  // forward, defined below

}  // namespace

double scattering_length(const ExperimentConfig& config) {
  return resolve_a0(config);
}

NamedFunction make_function(const std::string& spec) {
  if (spec == "identity") {
    return {spec, [](double x) { return x; }};
  }
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  if (head == "indicator" && colon != std::string::npos) {
    const double t = std::stod(spec.substr(colon + 1));
    return {spec, [t](double x) { return x > t ? 1.0 : 0.0; }};
  }
  if (head == "pwl" && colon != std::string::npos) {
    std::vector<double> xs, ys;
    std::string body = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t end = body.find(';', pos);
      if (end == std::string::npos) end = body.size();
      const std::string node = body.substr(pos, end - pos);
      const auto comma = node.find(',');
      if (comma == std::string::npos) {
        throw std::invalid_argument("pwl node needs x,y: " + node);
      }
      xs.push_back(std::stod(node.substr(0, comma)));
      ys.push_back(std::stod(node.substr(comma + 1)));
      pos = end + 1;
    }
    if (xs.size() < 2) {
      throw std::invalid_argument("pwl needs at least two nodes");
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (xs[i] <= xs[i - 1]) {
        throw std::invalid_argument("pwl nodes must increase in x");
      }
    }
    return {spec, [xs, ys](double x) {
              if (x <= xs.front()) return ys.front();
              if (x >= xs.back()) return ys.back();
              const auto it = std::upper_bound(xs.begin(), xs.end(), x);
              const std::size_t i = std::size_t(it - xs.begin());
              const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
              return ys[i - 1] + t * (ys[i] - ys[i - 1]);
            }};
  }
  throw std::invalid_argument("unknown function spec: " + spec);
}

RunRecord lln_run(const ExperimentConfig& config) {
  validate(config, false);
  RunRecord record = snapshot(config);
  record.w1.resize(config.n_grid.size());

  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    const int n = config.n_grid[i];
    const Context ctx = make_context(config, n);
    auto& slot = record.w1[i];
    slot.assign(std::size_t(config.replicas), 0.0);
    run_replicas(config.replicas, config.n_threads, config.seed,
                 std::uint64_t(n), [&](int r, rng::Stream& stream) {
                   const auto counts = draw_counts(ctx, stream, n);
                   const auto empirical =
                       ot::DiscreteMeasure::from_counts(ctx.values, counts);
                   slot[std::size_t(r)] =
                       ot::wasserstein_1_cdf(empirical, ctx.reference);
                 });
  }

  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    const int n = config.n_grid[i];
    const MeanError me = mean_and_error(record.w1[i]);
    for (double delta : config.deltas) {
      int exceed = 0;
      for (double w : record.w1[i]) {
        if (w > delta) ++exceed;
      }
      record.lln_rows.push_back(
          {n, config.replicas, delta, double(exceed) / config.replicas,
           me.mean, me.se, std::sqrt(double(n)) * me.mean});
    }
  }
  return record;
}

RunRecord clt_run(const ExperimentConfig& config) {
  validate(config, true);
  RunRecord record = snapshot(config);
  const int m = int(config.functions.size());
  record.statistics.resize(config.n_grid.size());

  Eigen::MatrixXd sigma_model;
  std::vector<std::vector<double>> last_samples;

  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    const int n = config.n_grid[i];
    const Context ctx = make_context(config, n);

    std::vector<double> ref_mean(std::size_t(m), 0.0);
    for (int j = 0; j < m; ++j) {
      ref_mean[std::size_t(j)] =
          ctx.reference.integrate(config.functions[std::size_t(j)].fn);
    }
    std::vector<std::vector<double>> f_values(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      for (double v : ctx.values) {
        f_values[std::size_t(j)].push_back(
            config.functions[std::size_t(j)].fn(v));
      }
    }

    auto& slot = record.statistics[i];
    slot.assign(std::size_t(config.replicas),
                std::vector<double>(std::size_t(m), 0.0));
    run_replicas(config.replicas, config.n_threads, config.seed,
                 std::uint64_t(n), [&](int r, rng::Stream& stream) {
                   const auto counts = draw_counts(ctx, stream, n);
                   for (int j = 0; j < m; ++j) {
                     double acc = 0.0;
                     for (std::size_t c = 0; c < counts.size(); ++c) {
                       acc += double(counts[c]) * f_values[std::size_t(j)][c];
                     }
                     slot[std::size_t(r)][std::size_t(j)] =
                         std::sqrt(double(n)) *
                         (acc / double(n) - ref_mean[std::size_t(j)]);
                   }
                 });

    if (i + 1 == config.n_grid.size()) {
      record.summary_n = n;
      sigma_model = model_covariance(config, ctx, n);
      last_samples.assign(std::size_t(m), {});
      for (int j = 0; j < m; ++j) {
        for (const auto& row : slot) {
          last_samples[std::size_t(j)].push_back(row[std::size_t(j)]);
        }
      }
    }
  }

  // sample covariance with moment-based standard errors
  const int r_count = config.replicas;
  std::vector<double> means(std::size_t(m), 0.0);
  for (int j = 0; j < m; ++j) {
    for (double x : last_samples[std::size_t(j)]) means[std::size_t(j)] += x;
    means[std::size_t(j)] /= double(r_count);
  }
  record.sigma_model = sigma_model;
  record.sigma_sample.resize(m, m);
  record.sigma_stderr.resize(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      double c2 = 0.0, c22 = 0.0;
      for (int r = 0; r < r_count; ++r) {
        const double xj =
            last_samples[std::size_t(j)][std::size_t(r)] - means[std::size_t(j)];
        const double xk =
            last_samples[std::size_t(k)][std::size_t(r)] - means[std::size_t(k)];
        c2 += xj * xk;
        c22 += xj * xj * xk * xk;
      }
      const double cov_pop = c2 / double(r_count);
      record.sigma_sample(j, k) = c2 / double(r_count - 1);
      record.sigma_stderr(j, k) = std::sqrt(std::max(
          0.0, (c22 / double(r_count) - cov_pop * cov_pop) / double(r_count)));
    }
  }

  record.normality.resize(std::size_t(m));
  for (int j = 0; j < m; ++j) {
    const double var = record.sigma_model(j, j);
    if (var > 1e-14 && r_count >= 200) {
      record.normality[std::size_t(j)] =
          normality_test(last_samples[std::size_t(j)], var);
    }
  }
  return record;
}

ScalingFit scaling_fit(const RunRecord& record) {
  if (record.w1.size() < 4) {
    throw std::invalid_argument("scaling fit needs at least four grid points");
  }
  const std::size_t k = record.w1.size();
  std::vector<double> xs(k), ys(k), means(k), ses(k);
  for (std::size_t i = 0; i < k; ++i) {
    const MeanError me = mean_and_error(record.w1[i]);
    if (me.mean <= 0.0) {
      throw std::invalid_argument("degenerate W1 means in scaling fit");
    }
    means[i] = me.mean;
    ses[i] = me.se;
    xs[i] = std::log(double(record.n_grid[i]));
    ys[i] = std::log(me.mean);
  }

  double x_bar = 0.0, y_bar = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    x_bar += xs[i];
    y_bar += ys[i];
  }
  x_bar /= double(k);
  y_bar /= double(k);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (xs[i] - x_bar) * (xs[i] - x_bar);
    sxy += (xs[i] - x_bar) * (ys[i] - y_bar);
  }
  ScalingFit fit;
  fit.slope = sxy / sxx;
  const double intercept = y_bar - fit.slope * x_bar;
  double rss = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double resid = ys[i] - intercept - fit.slope * xs[i];
    rss += resid * resid;
  }
  fit.half_width = 2.0 * std::sqrt(rss / double(k - 2) / sxx);

  fit.sqrtn_nonincreasing = true;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const double lo = std::sqrt(double(record.n_grid[i]));
    const double hi = std::sqrt(double(record.n_grid[i + 1]));
    if (hi * means[i + 1] >
        lo * means[i] + 2.0 * (lo * ses[i] + hi * ses[i + 1])) {
      fit.sqrtn_nonincreasing = false;
    }
  }
  return fit;
}

namespace {

// P(D_n < d) by the Marsaglia-Tsang-Wang matrix method, exact up to
// round-off at desk sample sizes.
double ks_cdf(int n, double d) {
  if (d <= 0.0) return 0.0;
  if (d * d * n >= 18.0 || d >= 1.0) return 1.0;
  const int k = int(std::ceil(n * d));
  const double h = k - n * d;
  const int m = 2 * k - 1;

  Eigen::MatrixXd base = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i - j + 1 >= 0) base(i, j) = 1.0;
    }
  }
  for (int i = 0; i < m; ++i) {
    base(i, 0) -= std::pow(h, i + 1);
    base(m - 1, i) -= std::pow(h, m - i);
  }
  base(m - 1, 0) += 2.0 * h - 1.0 > 0.0 ? std::pow(2.0 * h - 1.0, m) : 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i - j + 1 > 0) {
        for (int g = 1; g <= i - j + 1; ++g) base(i, j) /= double(g);
      }
    }
  }

  // base^n by binary exponentiation, rescaling through powers of ten
  int exponent = 0;
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd power = base;
  int power_exp = 0;
  int remaining = n;
  auto rescale = [&](Eigen::MatrixXd& mat, int& e) {
    const double big = mat.cwiseAbs().maxCoeff();
    if (big > 1e140) {
      mat *= 1e-140;
      e += 140;
    }
  };
  while (remaining > 0) {
    if (remaining & 1) {
      result = result * power;
      exponent += power_exp;
      rescale(result, exponent);
    }
    remaining >>= 1;
    if (remaining > 0) {
      power = power * power;
      power_exp *= 2;
      rescale(power, power_exp);
    }
  }

  double s = result(k - 1, k - 1);
  for (int i = 1; i <= n; ++i) {
    s *= double(i) / double(n);
    if (s < 1e-140) {
      s *= 1e140;
      exponent -= 140;
    }
  }
  return s * std::pow(10.0, exponent);
}

}  // namespace

NormalityResult normality_test(std::span<const double> samples,
                               double variance) {
  if (samples.size() < 200) {
    throw std::invalid_argument("normality test needs at least 200 samples");
  }
  if (!(variance > 0.0)) {
    throw std::invalid_argument("normality test needs a positive variance");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double sd = std::sqrt(variance);
  const std::size_t n = sorted.size();
  double dist = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = 0.5 * std::erfc(-sorted[i] / (sd * std::sqrt(2.0)));
    dist = std::max(dist, double(i + 1) / double(n) - f);
    dist = std::max(dist, f - double(i) / double(n));
  }
  NormalityResult out;
  out.statistic = dist;
  out.p_value = 1.0 - ks_cdf(int(n), dist);
  return out;
}

VarianceReport variance_comparison(const ExperimentConfig& config,
                                   const NamedFunction& g) {
  validate(config, false);
  const auto& obs = require_observable(config);
  if (config.model == ModelKind::iid_surrogate) {
    throw std::invalid_argument(
        "variance comparison needs a state model, not the surrogate");
  }
  const lattice::MomentumLattice* modes = nullptr;
  if (config.torus) {
    modes = &config.torus->excited_modes();
  } else {
    throw std::invalid_argument(
        "variance comparison needs the torus physics context");
  }
  const double a0 = resolve_a0(config);
  const auto sigma = bogo::sigma_f(obs, g.fn, a0, *modes);
  double sigma_norm_sq = 0.0;
  for (const auto& z : sigma) sigma_norm_sq += std::norm(z);

  VarianceReport report;
  for (int n : config.n_grid) {
    const Context ctx = [&]() {
      if (config.model == ModelKind::product) {
        // product state on the same mode table, interaction ignored
        auto basis = std::make_shared<fock::OccupationBasis>(
            fock::OccupationBasis::fixed_total(int(obs.dim()), n));
        auto state =
            std::make_shared<Eigen::VectorXcd>(qsim::product_state(*basis));
        return Context{{}, {}, nullptr, basis, state, bogo::nu_phi(obs)};
      }
      return make_context(config, n);
    }();
    const double lhs =
        double(n) * qsim::variance_lhs(*ctx.basis, *ctx.state, obs, g.fn);
    report.rows.push_back({n, lhs, sigma_norm_sq, lhs - sigma_norm_sq});
  }

  bool fittable = report.rows.size() >= 2;
  for (const auto& row : report.rows) {
    if (std::fabs(row.gap) < 1e-14) fittable = false;
  }
  if (fittable) {
    double x_bar = 0.0, y_bar = 0.0;
    for (const auto& row : report.rows) {
      x_bar += std::log(double(row.n));
      y_bar += std::log(std::fabs(row.gap));
    }
    x_bar /= double(report.rows.size());
    y_bar /= double(report.rows.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& row : report.rows) {
      const double dx = std::log(double(row.n)) - x_bar;
      sxx += dx * dx;
      sxy += dx * (std::log(std::fabs(row.gap)) - y_bar);
    }
    report.gap_decay_slope = sxy / sxx;
  }
  return report;
}

std::string lln_csv(const RunRecord& record) {
  std::string out = "N,replicas,delta,p_exceed,mean_w1,stderr_w1,sqrtN_mean_w1\n";
  for (const auto& row : record.lln_rows) {
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.replicas);
    out += ',';
    append_num(out, row.delta);
    out += ',';
    append_num(out, row.p_exceed);
    out += ',';
    append_num(out, row.mean_w1);
    out += ',';
    append_num(out, row.stderr_w1);
    out += ',';
    append_num(out, row.sqrtn_mean_w1);
    out += '\n';
  }
  return out;
}

std::string clt_samples_csv(const RunRecord& record) {
  std::string out = "N,replica,j,value\n";
  for (std::size_t i = 0; i < record.statistics.size(); ++i) {
    for (std::size_t r = 0; r < record.statistics[i].size(); ++r) {
      for (std::size_t j = 0; j < record.statistics[i][r].size(); ++j) {
        out += std::to_string(record.n_grid[i]);
        out += ',';
        out += std::to_string(r);
        out += ',';
        out += std::to_string(j);
        out += ',';
        append_num(out, record.statistics[i][r][j]);
        out += '\n';
      }
    }
  }
  return out;
}

std::string clt_summary_csv(const RunRecord& record) {
  std::string out = "j,k,sigma_model,sigma_sample,stderr\n";
  for (Eigen::Index j = 0; j < record.sigma_model.rows(); ++j) {
    for (Eigen::Index k = 0; k < record.sigma_model.cols(); ++k) {
      out += std::to_string(j);
      out += ',';
      out += std::to_string(k);
      out += ',';
      append_num(out, record.sigma_model(j, k));
      out += ',';
      append_num(out, record.sigma_sample(j, k));
      out += ',';
      append_num(out, record.sigma_stderr(j, k));
      out += '\n';
    }
  }
  return out;
}

std::string variance_csv(const VarianceReport& report) {
  std::string out = "N,lhs_times_N,sigma_norm_sq,gap\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.n);
    out += ',';
    append_num(out, row.lhs_times_n);
    out += ',';
    append_num(out, row.sigma_norm_sq);
    out += ',';
    append_num(out, row.gap);
    out += '\n';
  }
  return out;
}

}  // namespace bosestat::experiments
