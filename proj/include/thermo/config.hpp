#pragma once

#include "thermo/spectra.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace thermo {

// Flat `key = value` text; `#` starts a comment, blank lines are skipped.
// Keys outside `allowed` and repeated keys raise ConfigError.
std::map<std::string, std::string> parse_key_values(std::string_view text, const std::set<std::string>& allowed);

std::vector<double> parse_number_list(std::string_view value);
double parse_number(std::string_view value);
long long parse_integer(std::string_view value);

std::string read_text_file(const std::string& path);

struct StateConfig {
  EnergySpectrum spectrum;
  std::optional<std::vector<double>> probs;
  double beta = 1.0;

  // The configured state, or the Gibbs state when no probabilities were given.
  DiagonalState state() const;
};

// Keys: levels | (delta, num_levels), probs, beta.
StateConfig parse_state_config(std::string_view text);
StateConfig load_state_config(const std::string& path);

}  // namespace thermo
