#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "runner.hpp"

namespace cli = bosestat::cli;

int main(int argc, char** argv) {
  CLI::App app{"Measurement statistics for dilute Bose gases at desk scale"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  cli::GlobalOptions options;
  app.add_option("--config", config_path, "configuration file")->required();
  app.add_option("--out-dir", options.out_dir, "output directory override");
  app.add_option("--seed", options.seed, "master seed override");
  app.add_option("--threads", options.threads, "worker threads")
      ->check(CLI::PositiveNumber);

  auto* scattering =
      app.add_subcommand("scattering", "zero-energy scattering profile");
  auto* covariance =
      app.add_subcommand("covariance", "asymptotic covariance matrix");
  auto* lln = app.add_subcommand("lln", "transport-cost concentration run");
  auto* clt = app.add_subcommand("clt", "rescaled-statistic distribution run");
  auto* variance =
      app.add_subcommand("variance", "finite-N variance comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto dispatch =
      [&](int (*cmd)(const cli::Config&, const cli::GlobalOptions&)) {
        cli::Config config;
        const int rc =
            cli::run_guarded([&] { config = cli::Config::load(config_path); });
        return rc != 0 ? rc : cmd(config, options);
      };

  if (scattering->parsed()) return dispatch(cli::cmd_scattering);
  if (covariance->parsed()) return dispatch(cli::cmd_covariance);
  if (lln->parsed()) return dispatch(cli::cmd_lln);
  if (clt->parsed()) return dispatch(cli::cmd_clt);
  if (variance->parsed()) return dispatch(cli::cmd_variance);
  return 2;
}
