#pragma once

#include "thermo/linalg.hpp"
#include "thermo/spectra.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace thermo {

// Transition matrix r(s'k'|sk) on joint (system, battery) populations.
// Rows are output pairs, columns input pairs; a pair (s, k) sits at index
// k * d + s, so each battery level owns a contiguous block of d entries.
class ThermalChannel {
 public:
  ThermalChannel() = default;
  ThermalChannel(Matrix r, EnergySpectrum sys_in, EnergySpectrum sys_out, EnergySpectrum battery, double beta);

  const Matrix& matrix() const { return r_; }
  const EnergySpectrum& sys_in() const { return sys_in_; }
  const EnergySpectrum& sys_out() const { return sys_out_; }
  const EnergySpectrum& battery() const { return battery_; }
  double beta() const { return beta_; }

  int d_in() const { return sys_in_.size(); }
  int d_out() const { return sys_out_.size(); }
  int battery_levels() const { return battery_.size(); }
  int in_index(int s, int k) const { return k * d_in() + s; }
  int out_index(int s, int k) const { return k * d_out() + s; }

  double operator()(int s_out, int k_out, int s_in, int k_in) const {
    return r_(out_index(s_out, k_out), in_index(s_in, k_in));
  }

 private:
  Matrix r_;
  EnergySpectrum sys_in_;
  EnergySpectrum sys_out_;
  EnergySpectrum battery_;
  double beta_ = 1.0;
};

struct Tolerances {
  double stochasticity = 1e-12;
  double gibbs = 1e-10;
};

struct ValidationReport {
  std::vector<double> column_residuals;  // |sum_i r(i|j) - 1| per input column
  std::vector<double> gibbs_residuals;   // Gibbs-condition residual per output row
  double max_stochasticity_residual = 0.0;
  double max_gibbs_residual = 0.0;
  double min_entry = 0.0;
  double max_entry = 0.0;
  bool entries_in_range = true;
  bool valid = true;
};

ValidationReport validate(const ThermalChannel& channel, const Tolerances& tol = {});

ThermalChannel identity_channel(const EnergySpectrum& sys, const EnergySpectrum& battery, double beta);

// Channel applying `first` and then `second`.
ThermalChannel compose(const ThermalChannel& second, const ThermalChannel& first);

// Joint population vector of sys ⊗ bat in the channel index convention.
Vector product_state(const DiagonalState& sys, const DiagonalState& bat);
Vector apply(const ThermalChannel& channel, const Vector& joint_in);
Vector apply(const ThermalChannel& channel, const DiagonalState& sys, const DiagonalState& bat);
DiagonalState output_system_marginal(const ThermalChannel& channel, const Vector& joint_out);
DiagonalState output_battery_marginal(const ThermalChannel& channel, const Vector& joint_out);

// d_out x d_in block taking system populations at battery level k to level k_prime.
Matrix extract_subchannels(const ThermalChannel& channel, int k, int k_prime);

enum class EtiWindow { Main, Appendix };

struct EtiViolation {
  double value = 0.0;
  int s_out = -1, k_out = -1, s_in = -1, k_in = -1;  // first entry of the offending pair
  int shift = 0;                                     // the pair's second entry is shifted by this
};

struct ETIReport {
  int k_min = 0;
  int band_top = 0;  // highest battery index taking part in the comparison
  double tolerance = 0.0;
  EtiViolation worst_main;
  EtiViolation worst_appendix;
  bool holds_main = true;
  bool holds_appendix = true;
  EtiWindow window = EtiWindow::Main;
  bool holds = true;  // verdict for the selected window
};

// Translation invariance above k_min: r(s'k'|sk) = r(s',k'+n|s,k+n).
// Main window: k >= k_min, 0 <= k'+n <= top, k_min <= k+n <= top.
// Appendix window: k >= k_min, 0 <= k+n <= top, k_min <= k'+n <= top.
// band_top < 0 uses the highest battery level.
ETIReport check_eti(const ThermalChannel& channel, int k_min, int band_top = -1, double tol = 1e-14,
                    EtiWindow window = EtiWindow::Main);

// Product of num_mixes random two-level Gibbs-preserving blocks on the joint space.
ThermalChannel random_gibbs_stochastic(const EnergySpectrum& sys, const EnergySpectrum& battery, double beta,
                                       std::uint64_t seed, int num_mixes);

// Wit-battery thermal operation on diagonal states; R_ab moves the wit from a to b.
struct WitSubchannels {
  Matrix r00, r01, r10, r11;
  EnergySpectrum system;
  double delta = 0.0;
  double beta = 1.0;
};

struct SubchannelReport {
  double stochasticity_residual = 0.0;  // column sums of R00+R01 and R10+R11
  double gibbs_residual = 0.0;          // both Gibbs pair conditions
  double min_entry = 0.0;
  bool valid = true;
};

SubchannelReport validate_subchannels(const WitSubchannels& sub, const Tolerances& tol = {});

// Wit subchannels read off a channel on (system, {0, delta}).
WitSubchannels subchannels_from_wit_channel(const ThermalChannel& wit_channel);
WitSubchannels random_wit_subchannels(const EnergySpectrum& sys, double delta, double beta, std::uint64_t seed,
                                      int num_mixes);

// Text formats (17 significant digits). Channel: header `d_in d_out n_battery beta`,
// the matrix rows, then `# sys_in|sys_out|battery <levels>` lines.
// Subchannels: header `d delta beta`, a line of system levels, then R00, R01, R10, R11 rows.
void write_channel(std::ostream& out, const ThermalChannel& channel);
ThermalChannel read_channel(std::istream& in);
void write_subchannels(std::ostream& out, const WitSubchannels& sub);
WitSubchannels read_subchannels(std::istream& in);

}  // namespace thermo
