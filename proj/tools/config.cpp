#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace bosestat::cli {

namespace {

const std::set<std::string>& schema() {
  static const std::set<std::string> keys = {
      "potential.kind",      "potential.v0",        "potential.radius",
      "lattice.cutoff",      "model.n_particles",   "model.modes",
      "model.state_kind",    "observable.kind",     "observable.matrix_file",
      "experiment.n_grid",   "experiment.replicas", "experiment.deltas",
      "experiment.functions", "experiment.seed",    "output.directory",
      "output.plot",
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config config;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": empty section name");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": key outside any section");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    const std::string full = section + "." + key;
    if (!schema().count(full)) {
      throw ConfigError("unknown configuration key: " + full);
    }
    if (config.values_.count(full)) {
      throw ConfigError("duplicate configuration key: " + full);
    }
    config.values_[full] = value;
  }
  return config;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open configuration file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool Config::has_section(const std::string& section) const {
  const std::string prefix = section + ".";
  auto it = values_.lower_bound(prefix);
  return it != values_.end() && it->first.compare(0, prefix.size(), prefix) == 0;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return values_.count(section + "." + key) > 0;
}

std::string Config::str(const std::string& section,
                        const std::string& key) const {
  const auto it = values_.find(section + "." + key);
  if (it == values_.end()) {
    throw ConfigError("missing configuration key: " + section + "." + key);
  }
  return it->second;
}

std::string Config::str_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  const auto it = values_.find(section + "." + key);
  return it == values_.end() ? fallback : it->second;
}

double Config::number(const std::string& section,
                      const std::string& key) const {
  const std::string raw = str(section, key);
  try {
    std::size_t used = 0;
    const double value = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("not a number: " + section + "." + key + " = " + raw);
  }
}

int Config::integer(const std::string& section, const std::string& key) const {
  const std::string raw = str(section, key);
  try {
    std::size_t used = 0;
    const int value = std::stoi(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("not an integer: " + section + "." + key + " = " + raw);
  }
}

std::uint64_t Config::seed(const std::string& section,
                           const std::string& key) const {
  const std::string raw = str(section, key);
  try {
    std::size_t used = 0;
    const std::uint64_t value = std::stoull(raw, &used);
    if (used != raw.size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("not a seed: " + section + "." + key + " = " + raw);
  }
}

bool Config::flag_or(const std::string& section, const std::string& key,
                     bool fallback) const {
  if (!has(section, key)) return fallback;
  std::string raw = str(section, key);
  std::transform(raw.begin(), raw.end(), raw.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  if (raw == "on" || raw == "true" || raw == "1" || raw == "yes") return true;
  if (raw == "off" || raw == "false" || raw == "0" || raw == "no") return false;
  throw ConfigError("not a flag: " + section + "." + key + " = " + raw);
}

std::vector<int> Config::int_list(const std::string& section,
                                  const std::string& key) const {
  const std::string raw = str(section, key);
  std::vector<int> out;
  std::istringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("not an integer list: " + section + "." + key + " = " +
                        raw);
    }
  }
  if (out.empty()) {
    throw ConfigError("empty list: " + section + "." + key);
  }
  return out;
}

std::vector<double> Config::number_list(const std::string& section,
                                        const std::string& key) const {
  const std::string raw = str(section, key);
  std::vector<double> out;
  std::istringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("not a number list: " + section + "." + key + " = " +
                        raw);
    }
  }
  if (out.empty()) {
    throw ConfigError("empty list: " + section + "." + key);
  }
  return out;
}

}  // namespace bosestat::cli
