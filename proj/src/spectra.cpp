#include "thermo/spectra.hpp"

#include "thermo/errors.hpp"
#include "thermo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace thermo {

EnergySpectrum::EnergySpectrum(std::vector<double> levels, std::string label)
    : levels_(std::move(levels)), label_(std::move(label)) {
  if (levels_.empty()) throw Error(ErrorCode::InvalidState, "spectrum has no levels");
  for (double e : levels_) {
    if (!std::isfinite(e)) throw Error(ErrorCode::InvalidState, "non-finite energy level");
  }
}

EnergySpectrum EnergySpectrum::uniform(double delta, int num_steps, std::string label) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::DomainError, "uniform spectrum needs a positive finite spacing");
  }
  if (num_steps < 0) throw Error(ErrorCode::DomainError, "negative number of steps");
  std::vector<double> levels(static_cast<size_t>(num_steps) + 1);
  for (int k = 0; k <= num_steps; ++k) levels[static_cast<size_t>(k)] = k * delta;
  return EnergySpectrum(std::move(levels), std::move(label));
}

EnergySpectrum EnergySpectrum::flat(int n, std::string label) {
  if (n <= 0) throw Error(ErrorCode::DomainError, "flat spectrum needs at least one level");
  return EnergySpectrum(std::vector<double>(static_cast<size_t>(n), 0.0), std::move(label));
}

double EnergySpectrum::max_level() const {
  return *std::max_element(levels_.begin(), levels_.end());
}

double EnergySpectrum::min_level() const {
  return *std::min_element(levels_.begin(), levels_.end());
}

std::optional<double> EnergySpectrum::uniform_spacing(double tol) const {
  if (levels_.size() < 2 || levels_[0] != 0.0) return std::nullopt;
  const double delta = levels_[1];
  if (!(delta > 0.0)) return std::nullopt;
  for (size_t k = 0; k < levels_.size(); ++k) {
    const double expect = static_cast<double>(k) * delta;
    if (std::abs(levels_[k] - expect) > tol * std::max(1.0, std::abs(expect))) return std::nullopt;
  }
  return delta;
}

DiagonalState::DiagonalState(std::vector<double> probs, EnergySpectrum spectrum)
    : probs_(std::move(probs)), spectrum_(std::move(spectrum)) {
  if (static_cast<int>(probs_.size()) != spectrum_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "probability vector length differs from spectrum");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidState, "negative or non-finite probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationTol) {
    throw Error(ErrorCode::InvalidState, "probabilities sum to " + std::to_string(total));
  }
}

DiagonalState DiagonalState::basis(const EnergySpectrum& spectrum, int index) {
  if (index < 0 || index >= spectrum.size()) throw Error(ErrorCode::IndexOutOfRange, "basis index");
  std::vector<double> p(static_cast<size_t>(spectrum.size()), 0.0);
  p[static_cast<size_t>(index)] = 1.0;
  return DiagonalState(std::move(p), spectrum);
}

void check_exponent_guard(const EnergySpectrum& spectrum, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::DomainError, "beta must be positive");
  const double m = std::max(std::abs(spectrum.max_level()), std::abs(spectrum.min_level()));
  if (beta * m > kMaxExponent) {
    throw Error(ErrorCode::OverflowRisk, "beta*|E| = " + std::to_string(beta * m) + " exceeds 700");
  }
}

double log_partition_function(const EnergySpectrum& spectrum, double beta) {
  check_exponent_guard(spectrum, beta);
  std::vector<double> x(spectrum.levels().size());
  std::transform(spectrum.levels().begin(), spectrum.levels().end(), x.begin(),
                 [beta](double e) { return -beta * e; });
  return log_sum_exp(x);
}

double partition_function(const EnergySpectrum& spectrum, double beta) {
  return std::exp(log_partition_function(spectrum, beta));
}

std::vector<double> gibbs_weights(const EnergySpectrum& spectrum, double beta) {
  check_exponent_guard(spectrum, beta);
  std::vector<double> w(spectrum.levels().size());
  std::transform(spectrum.levels().begin(), spectrum.levels().end(), w.begin(),
                 [beta](double e) { return std::exp(-beta * e); });
  return w;
}

DiagonalState gibbs_state(const EnergySpectrum& spectrum, double beta) {
  const double log_z = log_partition_function(spectrum, beta);
  std::vector<double> p(spectrum.levels().size());
  std::transform(spectrum.levels().begin(), spectrum.levels().end(), p.begin(),
                 [&](double e) { return std::exp(-beta * e - log_z); });
  // Absorb the last few ulps so the state passes the normalization check.
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return DiagonalState(std::move(p), spectrum);
}

double gibbs_mean_energy(const EnergySpectrum& spectrum, double beta) {
  return mean_energy(gibbs_state(spectrum, beta));
}

double mean_energy(const DiagonalState& state) {
  double e = 0.0;
  for (int i = 0; i < state.size(); ++i) e += state[i] * state.spectrum()[i];
  return e;
}

double entropy(const DiagonalState& state) {
  double s = 0.0;
  for (double p : state.probs()) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double free_energy(const DiagonalState& state, double beta) {
  if (!(beta > 0.0)) throw Error(ErrorCode::DomainError, "beta must be positive");
  return mean_energy(state) - entropy(state) / beta;
}

double fine_grained_free_energy(const DiagonalState& state, double beta, int index) {
  if (index < 0 || index >= state.size()) throw Error(ErrorCode::IndexOutOfRange, "level index");
  if (!(beta > 0.0)) throw Error(ErrorCode::DomainError, "beta must be positive");
  const double p = state[index];
  if (p == 0.0) throw Error(ErrorCode::ZeroProbability, "level " + std::to_string(index));
  return state.spectrum()[index] + std::log(p) / beta;
}

double d_max(const DiagonalState& state, const DiagonalState& reference) {
  if (!(state.spectrum() == reference.spectrum())) {
    throw Error(ErrorCode::SpectrumMismatch, "d_max needs states on the same spectrum");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < state.size(); ++i) {
    if (state[i] == 0.0) continue;
    if (reference[i] == 0.0) throw Error(ErrorCode::SupportMismatch, "reference vanishes at " + std::to_string(i));
    best = std::max(best, std::log(state[i]) - std::log(reference[i]));
  }
  return best;
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw Error(ErrorCode::DomainError, "binary entropy argument outside [0,1]");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log1p(-x);
  return h;
}

}  // namespace thermo
