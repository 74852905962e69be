#pragma once

// Line-oriented configuration files: key = value pairs under bracketed
// section headers, validated against the fixed schema below. '#' starts a
// comment. Unknown sections, unknown keys and duplicate keys are rejected.
//
//   [potential]   kind (zero | soft-sphere), v0, radius
//   [lattice]     cutoff (units of 2 pi)
//   [model]       n_particles, modes (axis | ball), state_kind
//   [observable]  kind (multiplication-cosine | custom-matrix-file),
//                 matrix_file
//   [experiment]  n_grid, replicas, deltas, functions, seed
//   [output]      directory, plot

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bosestat::cli {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  // typed getters; all throw ConfigError naming section.key on a missing
  // entry or a malformed value
  std::string str(const std::string& section, const std::string& key) const;
  std::string str_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double number(const std::string& section, const std::string& key) const;
  int integer(const std::string& section, const std::string& key) const;
  std::uint64_t seed(const std::string& section, const std::string& key) const;
  bool flag_or(const std::string& section, const std::string& key,
               bool fallback) const;

  // comma-separated lists
  std::vector<int> int_list(const std::string& section,
                            const std::string& key) const;
  std::vector<double> number_list(const std::string& section,
                                  const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;  // "section.key" -> value
};

}  // namespace bosestat::cli
