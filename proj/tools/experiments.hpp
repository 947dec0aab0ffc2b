#pragma once

#include <json.hpp>

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace thermo::cli {

// Resolved experiment parameters, all held as text until read.
class Params {
 public:
  explicit Params(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  double number(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  const std::string& raw(const std::string& key) const;
  std::map<std::string, std::string> values_;
};

struct ParamSpec {
  std::string key;
  std::string default_value;
  std::string help;
};

struct ExperimentOutput {
  std::string csv;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> failed_assertions;
  bool passed() const { return failed_assertions.empty(); }
};

struct Experiment {
  std::string name;
  std::string description;
  std::string anchor;  // the result this experiment reproduces
  std::vector<ParamSpec> params;
  std::function<ExperimentOutput(const Params&)> run;
};

const std::vector<Experiment>& experiments();
const Experiment& find_experiment(std::string_view name);

// Defaults overlaid with `overrides`; keys the experiment does not declare raise ConfigError.
Params resolve_params(const Experiment& experiment, const std::map<std::string, std::string>& overrides);

// 17 significant digits, `.` decimal point.
std::string format_number(double x);

}  // namespace thermo::cli
