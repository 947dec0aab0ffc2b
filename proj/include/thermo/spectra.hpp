#pragma once

#include <optional>
#include <string>
#include <vector>

namespace thermo {

// Largest admissible beta * |energy| before exponentials are considered unsafe.
inline constexpr double kMaxExponent = 700.0;

// Energy levels in units of k_B T (values of beta * E at beta = 1).
class EnergySpectrum {
 public:
  EnergySpectrum() = default;
  explicit EnergySpectrum(std::vector<double> levels, std::string label = {});

  // Levels k * delta for k = 0..num_steps (num_steps + 1 levels).
  static EnergySpectrum uniform(double delta, int num_steps, std::string label = {});
  // n degenerate levels at energy zero.
  static EnergySpectrum flat(int n, std::string label = {});

  const std::vector<double>& levels() const { return levels_; }
  const std::string& label() const { return label_; }
  int size() const { return static_cast<int>(levels_.size()); }
  double operator[](int i) const { return levels_[static_cast<size_t>(i)]; }
  double max_level() const;
  double min_level() const;

  // Common spacing if levels are k * delta starting at 0 (relative tolerance tol).
  std::optional<double> uniform_spacing(double tol = 1e-12) const;

  bool operator==(const EnergySpectrum& other) const { return levels_ == other.levels_; }

 private:
  std::vector<double> levels_;
  std::string label_;
};

// Energy-diagonal state: a probability vector over a spectrum.
class DiagonalState {
 public:
  DiagonalState() = default;
  DiagonalState(std::vector<double> probs, EnergySpectrum spectrum);

  // Pure energy eigenstate |index>.
  static DiagonalState basis(const EnergySpectrum& spectrum, int index);

  const std::vector<double>& probs() const { return probs_; }
  const EnergySpectrum& spectrum() const { return spectrum_; }
  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[static_cast<size_t>(i)]; }

 private:
  std::vector<double> probs_;
  EnergySpectrum spectrum_;
};

inline constexpr double kNormalizationTol = 1e-12;

// Throws OverflowRisk unless beta * max|E| <= kMaxExponent.
void check_exponent_guard(const EnergySpectrum& spectrum, double beta);

double log_partition_function(const EnergySpectrum& spectrum, double beta);
double partition_function(const EnergySpectrum& spectrum, double beta);
// Unnormalized weights exp(-beta E_i).
std::vector<double> gibbs_weights(const EnergySpectrum& spectrum, double beta);
DiagonalState gibbs_state(const EnergySpectrum& spectrum, double beta);
// Mean energy of the Gibbs state.
double gibbs_mean_energy(const EnergySpectrum& spectrum, double beta);

double mean_energy(const DiagonalState& state);
// Shannon entropy in nats, 0 ln 0 = 0.
double entropy(const DiagonalState& state);
// <E> - S / beta.
double free_energy(const DiagonalState& state, double beta);
// E_i + ln(p_i) / beta; throws ZeroProbability when p_i = 0.
double fine_grained_free_energy(const DiagonalState& state, double beta, int index);
// ln max_i p_i / q_i over the support of state.
double d_max(const DiagonalState& state, const DiagonalState& reference);

// Natural-log binary entropy, h(0) = h(1) = 0.
double binary_entropy(double x);

}  // namespace thermo
