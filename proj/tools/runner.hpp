#pragma once

// Command implementations behind the bosestat executable. Each command
// reads a validated configuration, runs the matching pipeline stage and
// writes its CSV tables (and SVG plots when enabled) into the output
// directory.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "config.hpp"

namespace bosestat::cli {

struct GlobalOptions {
  std::string out_dir;                // overrides [output] directory
  std::optional<std::uint64_t> seed;  // overrides [experiment] seed
  int threads = 1;
};

// Exit code policy: 0 success, 2 configuration error, 3 numerical failure,
// 4 non-convergence.
int run_guarded(const std::function<void()>& body);

int cmd_scattering(const Config& config, const GlobalOptions& options);
int cmd_covariance(const Config& config, const GlobalOptions& options);
int cmd_lln(const Config& config, const GlobalOptions& options);
int cmd_clt(const Config& config, const GlobalOptions& options);
int cmd_variance(const Config& config, const GlobalOptions& options);

}  // namespace bosestat::cli
