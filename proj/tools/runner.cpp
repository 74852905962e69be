#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosestat/bogoliubov.hpp"
#include "bosestat/experiments.hpp"
#include "bosestat/lanczos.hpp"
#include "bosestat/lattice.hpp"
#include "bosestat/scattering.hpp"
#include "bosestat/spectral.hpp"
#include "bosestat/torus.hpp"
#include "svgplot.hpp"

namespace bosestat::cli {

namespace fs = std::filesystem;
namespace ex = bosestat::experiments;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void append_num(std::string& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

std::string num(double v) {
  std::string s;
  append_num(s, v);
  return s;
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

fs::path resolve_out_dir(const Config& config, const GlobalOptions& options) {
  const std::string dir = !options.out_dir.empty()
                              ? options.out_dir
                              : config.str_or("output", "directory", ".");
  fs::path path(dir);
  fs::create_directories(path);
  return path;
}

bool plot_enabled(const Config& config) {
  return config.flag_or("output", "plot", false);
}

scattering::RadialPotential make_potential(const Config& config) {
  if (!config.has_section("potential")) {
    throw ConfigError("missing [potential] section");
  }
  const std::string kind = config.str("potential", "kind");
  if (kind == "zero") {
    return scattering::RadialPotential::zero();
  }
  if (kind == "soft-sphere") {
    const double v0 = config.number("potential", "v0");
    const double radius = config.number("potential", "radius");
    if (v0 < 0.0) throw ConfigError("potential.v0 must be nonnegative");
    if (radius <= 0.0) throw ConfigError("potential.radius must be positive");
    return scattering::RadialPotential::soft_sphere(v0, radius);
  }
  throw ConfigError("unknown potential.kind: " + kind);
}

lattice::MomentumLattice make_lattice(const Config& config) {
  const double cutoff = config.number("lattice", "cutoff");
  if (cutoff < 1.0) {
    throw ConfigError("lattice.cutoff must be at least 1 (units of 2 pi)");
  }
  const std::string shape = config.str_or("model", "modes", "axis");
  if (shape == "axis") return lattice::MomentumLattice::axis(cutoff * kTwoPi);
  if (shape == "ball") return lattice::MomentumLattice::ball(cutoff * kTwoPi);
  throw ConfigError("unknown model.modes: " + shape);
}

bogo::SpectralObservable make_matrix_observable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open observable.matrix_file " + path);
  std::size_t n = 0;
  if (!(in >> n) || n == 0) {
    throw ConfigError("observable.matrix_file must start with the dimension");
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(n), Eigen::Index(n));
  std::size_t row = 0, col = 0;
  double re = 0.0, im = 0.0;
  while (in >> row >> col >> re >> im) {
    if (row >= n || col >= n) {
      throw ConfigError("observable.matrix_file entry out of range");
    }
    m(Eigen::Index(row), Eigen::Index(col)) = bogo::Complex(re, im);
    m(Eigen::Index(col), Eigen::Index(row)) = std::conj(bogo::Complex(re, im));
  }
  if (!in.eof()) {
    throw ConfigError("malformed entry in observable.matrix_file " + path);
  }
  return bogo::SpectralObservable(std::move(m));
}

bogo::SpectralObservable make_observable(const Config& config,
                                         const lattice::MomentumLattice* modes) {
  const std::string kind =
      config.str_or("observable", "kind", "multiplication-cosine");
  if (kind == "multiplication-cosine") {
    if (modes == nullptr) {
      throw ConfigError("observable multiplication-cosine needs [lattice]");
    }
    return bogo::SpectralObservable::multiplication_cosine(*modes);
  }
  if (kind == "custom-matrix-file") {
    return make_matrix_observable(config.str("observable", "matrix_file"));
  }
  throw ConfigError("unknown observable.kind: " + kind);
}

ex::ModelKind make_model_kind(const Config& config) {
  const std::string kind = config.str_or("model", "state_kind", "product");
  if (kind == "product") return ex::ModelKind::product;
  if (kind == "iid-surrogate") return ex::ModelKind::iid_surrogate;
  if (kind == "quasifree") return ex::ModelKind::quasifree;
  if (kind == "exact-ground-state") return ex::ModelKind::exact_ground_state;
  throw ConfigError("unknown model.state_kind: " + kind);
}

std::vector<ex::NamedFunction> make_functions(const Config& config) {
  const std::string spec = config.str_or("experiment", "functions", "identity");
  std::vector<ex::NamedFunction> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t bar = spec.find('|', start);
    const std::size_t end = bar == std::string::npos ? spec.size() : bar;
    std::string item = spec.substr(start, end - start);
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    if (a == std::string::npos) {
      throw ConfigError("experiment.functions has an empty entry");
    }
    out.push_back(ex::make_function(item.substr(a, b - a + 1)));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return out;
}

// Assembles the run configuration; the observable and torus context are
// attached whenever the sections describing them are present.
ex::ExperimentConfig make_experiment(const Config& config,
                                     const GlobalOptions& options) {
  ex::ExperimentConfig out;
  out.model = make_model_kind(config);
  out.n_grid = config.int_list("experiment", "n_grid");
  if (config.has("experiment", "replicas")) {
    out.replicas = config.integer("experiment", "replicas");
  }
  if (config.has("experiment", "deltas")) {
    out.deltas = config.number_list("experiment", "deltas");
  }
  out.functions = make_functions(config);
  if (options.seed) {
    out.seed = *options.seed;
  } else if (config.has("experiment", "seed")) {
    out.seed = config.seed("experiment", "seed");
  }
  out.n_threads = options.threads;

  std::optional<lattice::MomentumLattice> modes;
  if (config.has_section("lattice")) {
    modes = make_lattice(config);
  }
  if (modes || config.has_section("observable")) {
    out.observable = make_observable(config, modes ? &*modes : nullptr);
  }
  if (config.has_section("potential")) {
    if (!modes) {
      throw ConfigError("[potential] needs [lattice] to define the model");
    }
    const int n = config.has("model", "n_particles")
                      ? config.integer("model", "n_particles")
                      : (out.n_grid.empty() ? 2 : out.n_grid.front());
    out.torus = qsim::TorusModel(*modes, n, make_potential(config));
  }
  return out;
}

std::vector<double> grid_means(const ex::RunRecord& record) {
  std::vector<double> means;
  means.reserve(record.w1.size());
  for (const auto& rows : record.w1) {
    double acc = 0.0;
    for (double v : rows) acc += v;
    means.push_back(acc / double(rows.size()));
  }
  return means;
}

void write_lln_plot(const ex::RunRecord& record, const fs::path& path) {
  const std::vector<double> means = grid_means(record);
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (means[i] <= 0.0) continue;
    xs.push_back(std::log10(double(record.n_grid[i])));
    ys.push_back(std::log10(means[i]));
  }
  SvgPlot plot("Empirical transport cost vs system size", "log10 N",
               "log10 E[W1]");
  plot.add_points(xs, ys, "#1f6fb2");
  if (xs.size() >= 4) {
    const ex::ScalingFit fit = ex::scaling_fit(record);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= double(xs.size());
    my /= double(xs.size());
    const double b = my - fit.slope * mx;
    plot.add_line({xs.front(), xs.back()},
                  {fit.slope * xs.front() + b, fit.slope * xs.back() + b},
                  "#c44e52");
  }
  plot.write(path.string());
}

void write_clt_plot(const ex::RunRecord& record, const fs::path& path) {
  std::vector<double> samples;
  for (const auto& rep : record.statistics.back()) samples.push_back(rep[0]);
  std::sort(samples.begin(), samples.end());
  const double lo = samples.front();
  const double hi = samples.back();
  const double span = std::max(hi - lo, 1e-12);
  const int n_bins = 31;
  const double width = span / n_bins;
  std::vector<double> centers(n_bins), heights(n_bins, 0.0);
  for (int b = 0; b < n_bins; ++b) centers[b] = lo + (b + 0.5) * width;
  for (double v : samples) {
    int b = int((v - lo) / width);
    b = std::clamp(b, 0, n_bins - 1);
    heights[b] += 1.0;
  }
  for (double& h : heights) h /= double(samples.size()) * width;

  SvgPlot plot("Rescaled statistic vs limiting density",
               record.function_names.empty() ? "value"
                                             : record.function_names.front(),
               "density");
  plot.add_bars(centers, heights, width, "#1f6fb2");
  const double variance = record.sigma_model(0, 0);
  if (variance > 0.0) {
    std::vector<double> xs, ys;
    const double pad = 0.05 * span;
    for (int i = 0; i <= 128; ++i) {
      const double x = lo - pad + (span + 2 * pad) * i / 128.0;
      xs.push_back(x);
      ys.push_back(std::exp(-0.5 * x * x / variance) /
                   std::sqrt(kTwoPi * variance));
    }
    plot.add_line(xs, ys, "#c44e52");
  }
  plot.write(path.string());
}

}  // namespace

int run_guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const qsim::ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

int cmd_scattering(const Config& config, const GlobalOptions& options) {
  return run_guarded([&] {
    const auto V = make_potential(config);
    const fs::path out_dir = resolve_out_dir(config, options);
    const double r_max = V.is_zero() ? 8.0 : 6.0 * V.support_radius();
    const auto sol = scattering::solve_zero_energy(V, r_max, 4096);
    const double a0_integral = scattering::scattering_length_integral(sol, V);

    std::string csv = "r,f,V\n";
    for (std::size_t i = 0; i < sol.r.size(); ++i) {
      append_num(csv, sol.r[i]);
      csv += ',';
      append_num(csv, sol.f[i]);
      csv += ',';
      append_num(csv, V(sol.r[i]));
      csv += '\n';
    }
    write_file(out_dir / "scattering.csv", csv);

    std::string report;
    report += "a0_tail=" + num(sol.a0) + "\n";
    report += "a0_integral=" + num(a0_integral) + "\n";
    report += "gap=" + num(std::fabs(sol.a0 - a0_integral)) + "\n";
    write_file(out_dir / "a0.txt", report);

    std::printf("a0 tail %.12g, integral %.12g, gap %.3g\n", sol.a0,
                a0_integral, std::fabs(sol.a0 - a0_integral));

    if (plot_enabled(config)) {
      SvgPlot plot("Zero-energy scattering profile", "r", "f(r)");
      std::vector<double> xs(sol.r.begin(), sol.r.end());
      std::vector<double> ys(sol.f.begin(), sol.f.end());
      plot.add_line(xs, ys, "#1f6fb2");
      plot.write((out_dir / "scattering.svg").string());
    }
  });
}

int cmd_covariance(const Config& config, const GlobalOptions& options) {
  return run_guarded([&] {
    if (!config.has_section("lattice")) {
      throw ConfigError("covariance needs [lattice]");
    }
    const auto modes = make_lattice(config);
    const auto observable = make_observable(config, &modes);
    const auto functions = make_functions(config);
    const fs::path out_dir = resolve_out_dir(config, options);

    ex::ExperimentConfig a0_config;
    if (config.has_section("potential")) {
      a0_config.torus = qsim::TorusModel(modes, 2, make_potential(config));
    }
    const double a0 = ex::scattering_length(a0_config);

    std::vector<std::vector<bogo::Complex>> sigmas;
    sigmas.reserve(functions.size());
    std::string sigma_csv = "j,px,py,pz,re,im\n";
    for (std::size_t j = 0; j < functions.size(); ++j) {
      sigmas.push_back(bogo::sigma_f(observable, functions[j].fn, a0, modes));
      for (std::size_t i = 0; i < modes.size(); ++i) {
        const Eigen::Vector3d p = modes.momentum(i);
        sigma_csv += std::to_string(j) + ',';
        append_num(sigma_csv, p.x());
        sigma_csv += ',';
        append_num(sigma_csv, p.y());
        sigma_csv += ',';
        append_num(sigma_csv, p.z());
        sigma_csv += ',';
        append_num(sigma_csv, sigmas[j][i].real());
        sigma_csv += ',';
        append_num(sigma_csv, sigmas[j][i].imag());
        sigma_csv += '\n';
      }
    }
    write_file(out_dir / "sigma.csv", sigma_csv);

    const auto report = bogo::covariance_matrix(sigmas);
    const auto matrix_csv = [&](const Eigen::MatrixXd& m) {
      std::string csv = "j,k,value\n";
      for (Eigen::Index j = 0; j < m.rows(); ++j) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
          csv += std::to_string(j) + ',' + std::to_string(k) + ',';
          append_num(csv, m(j, k));
          csv += '\n';
        }
      }
      return csv;
    };
    write_file(out_dir / "covariance.csv", matrix_csv(report.covariance));
    write_file(out_dir / "covariance_imag.csv", matrix_csv(report.gram_imag));

    for (std::size_t j = 0; j < functions.size(); ++j) {
      std::printf("var[%s] = %.12g\n", functions[j].name.c_str(),
                  report.covariance(Eigen::Index(j), Eigen::Index(j)));
    }

    if (plot_enabled(config)) {
      std::vector<double> xs, ys;
      for (std::size_t i = 0; i < modes.size(); ++i) {
        xs.push_back(modes.momentum_norm(i));
        ys.push_back(bogo::mu_p(a0, modes.momentum_sq(i)));
      }
      SvgPlot plot("Dressing exponent over the lattice", "|p|", "mu_p");
      plot.add_points(xs, ys, "#1f6fb2");
      plot.write((out_dir / "dispersion.svg").string());
    }
  });
}

int cmd_lln(const Config& config, const GlobalOptions& options) {
  return run_guarded([&] {
    const auto experiment = make_experiment(config, options);
    const fs::path out_dir = resolve_out_dir(config, options);
    const ex::RunRecord record = ex::lln_run(experiment);
    write_file(out_dir / "lln_results.csv", ex::lln_csv(record));

    const std::vector<double> means = grid_means(record);
    for (std::size_t i = 0; i < means.size(); ++i) {
      std::printf("N=%d  E[W1] %.6g  sqrt(N) E[W1] %.6g\n", record.n_grid[i],
                  means[i], std::sqrt(double(record.n_grid[i])) * means[i]);
    }
    if (record.n_grid.size() >= 4) {
      const ex::ScalingFit fit = ex::scaling_fit(record);
      std::printf("slope %.4f +- %.4f\n", fit.slope, fit.half_width);
    }
    if (plot_enabled(config)) {
      write_lln_plot(record, out_dir / "lln_scaling.svg");
    }
  });
}

int cmd_clt(const Config& config, const GlobalOptions& options) {
  return run_guarded([&] {
    const auto experiment = make_experiment(config, options);
    const fs::path out_dir = resolve_out_dir(config, options);
    const ex::RunRecord record = ex::clt_run(experiment);
    write_file(out_dir / "clt_samples.csv", ex::clt_samples_csv(record));
    write_file(out_dir / "clt_summary.csv", ex::clt_summary_csv(record));

    for (std::size_t j = 0; j < record.function_names.size(); ++j) {
      const Eigen::Index jj(j);
      std::printf("%s: model var %.6g, sample var %.6g +- %.2g",
                  record.function_names[j].c_str(), record.sigma_model(jj, jj),
                  record.sigma_sample(jj, jj), record.sigma_stderr(jj, jj));
      if (record.normality[j]) {
        std::printf(", normality p %.3g", record.normality[j]->p_value);
      }
      std::printf("\n");
    }
    if (plot_enabled(config)) {
      write_clt_plot(record, out_dir / "clt_histogram.svg");
    }
  });
}

int cmd_variance(const Config& config, const GlobalOptions& options) {
  return run_guarded([&] {
    const auto experiment = make_experiment(config, options);
    const fs::path out_dir = resolve_out_dir(config, options);
    if (experiment.functions.empty()) {
      throw ConfigError("variance needs experiment.functions");
    }
    const ex::VarianceReport report =
        ex::variance_comparison(experiment, experiment.functions.front());
    write_file(out_dir / "variance_report.csv", ex::variance_csv(report));

    for (const auto& row : report.rows) {
      std::printf("N=%d  N var %.12g  |sigma|^2 %.12g  gap %.3g\n", row.n,
                  row.lhs_times_n, row.sigma_norm_sq, row.gap);
    }
    if (report.gap_decay_slope != 0.0) {
      std::printf("gap decay slope %.3f\n", report.gap_decay_slope);
    }
  });
}

}  // namespace bosestat::cli
