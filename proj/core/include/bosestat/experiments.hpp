#pragma once

// Monte Carlo harness: law-of-large-numbers and central-limit runs over the
// measurement statistics, the variance comparison against the dressed sigma
// vectors, and exact CSV serialization of the records.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bosestat/bogoliubov.hpp"
#include "bosestat/measure.hpp"
#include "bosestat/sampling.hpp"
#include "bosestat/scattering.hpp"
#include "bosestat/spectral.hpp"
#include "bosestat/torus.hpp"

namespace bosestat::experiments {

enum class ModelKind { product, iid_surrogate, quasifree, exact_ground_state };

struct NamedFunction {
  std::string name;
  std::function<double(double)> fn;
};

// Registry syntax: "identity" | "indicator:T" (1 for x > T) |
// "pwl:x0,y0;x1,y1;..." (piecewise linear, constant outside the nodes).
NamedFunction make_function(const std::string& spec);

struct ExperimentConfig {
  ModelKind model = ModelKind::product;
  std::vector<int> n_grid;
  int replicas = 100;
  std::vector<double> deltas = {0.05, 0.1, 0.2};
  std::vector<NamedFunction> functions;
  std::uint64_t seed = 1;
  int n_threads = 1;

  // observable on [zero mode | lattice points]; required except for a
  // surrogate run that carries its own law
  std::optional<bogo::SpectralObservable> observable;

  // sampling law for the iid surrogate; defaults to nu_phi of the observable
  std::optional<ot::DiscreteMeasure> surrogate;

  // physics context for the quasifree and exact models
  std::optional<qsim::TorusModel> torus;

  // scattering length for the asymptotic covariance; solved from the
  // potential when unset
  std::optional<double> a0;
};

struct LlnRow {
  int n = 0;
  int replicas = 0;
  double delta = 0.0;
  double p_exceed = 0.0;
  double mean_w1 = 0.0;
  double stderr_w1 = 0.0;
  double sqrtn_mean_w1 = 0.0;
};

struct NormalityResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

// Kolmogorov-Smirnov against the centered Gaussian with the given variance;
// the p-value uses the exact finite-sample distribution. Requires at least
// 200 samples and a positive variance.
NormalityResult normality_test(std::span<const double> samples,
                               double variance);

struct RunRecord {
  // config snapshot
  ModelKind model = ModelKind::product;
  std::vector<int> n_grid;
  int replicas = 0;
  std::vector<double> deltas;
  std::vector<std::string> function_names;
  std::uint64_t seed = 0;

  // raw rows, indexed [grid point][replica] and [grid point][replica][j]
  std::vector<std::vector<double>> w1;
  std::vector<std::vector<std::vector<double>>> statistics;

  // summaries recomputable from the raw rows
  std::vector<LlnRow> lln_rows;
  int summary_n = 0;  // grid point the CLT summary refers to (the largest)
  Eigen::MatrixXd sigma_model;
  Eigen::MatrixXd sigma_sample;
  Eigen::MatrixXd sigma_stderr;
  std::vector<std::optional<NormalityResult>> normality;
};

RunRecord lln_run(const ExperimentConfig& config);
RunRecord clt_run(const ExperimentConfig& config);

struct ScalingFit {
  double slope = 0.0;
  double half_width = 0.0;  // two standard errors of the slope
  bool sqrtn_nonincreasing = false;
};

// Least squares on log E[W1] vs log N over the raw rows; needs at least
// four grid points and positive means.
ScalingFit scaling_fit(const RunRecord& record);

struct VarianceRow {
  int n = 0;
  double lhs_times_n = 0.0;
  double sigma_norm_sq = 0.0;
  double gap = 0.0;
};

struct VarianceReport {
  std::vector<VarianceRow> rows;
  // least-squares exponent of |gap| vs N; zero when any gap vanishes or the
  // grid is too short
  double gap_decay_slope = 0.0;
};

VarianceReport variance_comparison(const ExperimentConfig& config,
                                   const NamedFunction& g);

// Scattering length used for the asymptotic covariance: config.a0 when set,
// otherwise solved from the torus potential (zero without a context).
double scattering_length(const ExperimentConfig& config);

// CSV bodies with fixed headers, 17 significant digits, LF line ends
std::string lln_csv(const RunRecord& record);
std::string clt_samples_csv(const RunRecord& record);
std::string clt_summary_csv(const RunRecord& record);
std::string variance_csv(const VarianceReport& report);

}  // namespace bosestat::experiments
