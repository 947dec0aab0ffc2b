#include "thermo/config.hpp"

#include "thermo/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace thermo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::string_view text, const std::set<std::string>& allowed) {
  std::map<std::string, std::string> out;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorCode::ConfigError, "line " + std::to_string(line_no) + ": empty key");
    if (!allowed.contains(key)) throw Error(ErrorCode::ConfigError, "unknown key '" + key + "'");
    if (!out.emplace(key, value).second) throw Error(ErrorCode::ConfigError, "repeated key '" + key + "'");
  }
  return out;
}

double parse_number(std::string_view value) {
  value = trim(value);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(x)) {
    throw Error(ErrorCode::ParseError, "not a finite number: '" + std::string(value) + "'");
  }
  return x;
}

long long parse_integer(std::string_view value) {
  value = trim(value);
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::ParseError, "not an integer: '" + std::string(value) + "'");
  }
  return x;
}

std::vector<double> parse_number_list(std::string_view value) {
  std::vector<double> out;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) out.push_back(parse_number(token));
    token.clear();
  };
  for (char c : value) {
    if (c == ',' || c == ' ' || c == '\t' || c == '[' || c == ']') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DiagonalState StateConfig::state() const {
  if (probs) return DiagonalState(*probs, spectrum);
  return gibbs_state(spectrum, beta);
}

StateConfig parse_state_config(std::string_view text) {
  const auto kv = parse_key_values(text, {"levels", "probs", "delta", "num_levels", "beta"});
  StateConfig cfg;
  if (kv.contains("levels")) {
    if (kv.contains("delta") || kv.contains("num_levels")) {
      throw Error(ErrorCode::ConfigError, "give either levels or delta/num_levels, not both");
    }
    cfg.spectrum = EnergySpectrum(parse_number_list(kv.at("levels")));
  } else if (kv.contains("delta") && kv.contains("num_levels")) {
    const long long n = parse_integer(kv.at("num_levels"));
    if (n < 1) throw Error(ErrorCode::ConfigError, "num_levels must be at least 1");
    cfg.spectrum = EnergySpectrum::uniform(parse_number(kv.at("delta")), static_cast<int>(n - 1));
  } else {
    throw Error(ErrorCode::ConfigError, "spectrum needs levels or delta and num_levels");
  }
  if (kv.contains("beta")) cfg.beta = parse_number(kv.at("beta"));
  if (!(cfg.beta > 0.0)) throw Error(ErrorCode::ConfigError, "beta must be positive");
  if (kv.contains("probs")) {
    cfg.probs = parse_number_list(kv.at("probs"));
    DiagonalState check(*cfg.probs, cfg.spectrum);
  }
  return cfg;
}

StateConfig load_state_config(const std::string& path) {
  return parse_state_config(read_text_file(path));
}

}  // namespace thermo
