#include "thermo/channels.hpp"

#include "thermo/errors.hpp"
#include "thermo/random.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace thermo {

ThermalChannel::ThermalChannel(Matrix r, EnergySpectrum sys_in, EnergySpectrum sys_out, EnergySpectrum battery,
                               double beta)
    : r_(std::move(r)),
      sys_in_(std::move(sys_in)),
      sys_out_(std::move(sys_out)),
      battery_(std::move(battery)),
      beta_(beta) {
  if (r_.rows() != static_cast<Eigen::Index>(d_out()) * battery_levels() ||
      r_.cols() != static_cast<Eigen::Index>(d_in()) * battery_levels()) {
    throw Error(ErrorCode::DimensionMismatch, "channel matrix is " + std::to_string(r_.rows()) + "x" +
                                                  std::to_string(r_.cols()) + ", spectra need " +
                                                  std::to_string(d_out() * battery_levels()) + "x" +
                                                  std::to_string(d_in() * battery_levels()));
  }
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) throw Error(ErrorCode::DomainError, "beta must be positive");
}

ValidationReport validate(const ThermalChannel& channel, const Tolerances& tol) {
  const Matrix& r = channel.matrix();
  const double beta = channel.beta();
  ValidationReport rep;
  rep.min_entry = r.size() ? r.minCoeff() : 0.0;
  rep.max_entry = r.size() ? r.maxCoeff() : 0.0;
  rep.entries_in_range = rep.min_entry >= 0.0 && rep.max_entry <= 1.0 + tol.stochasticity;

  rep.column_residuals.resize(static_cast<size_t>(r.cols()));
  for (Eigen::Index j = 0; j < r.cols(); ++j) {
    rep.column_residuals[static_cast<size_t>(j)] = std::abs(r.col(j).sum() - 1.0);
  }

  // Energy of every joint level, so each Gibbs term is exp(ln r + beta (E_out - E_in)).
  std::vector<double> e_in(static_cast<size_t>(r.cols())), e_out(static_cast<size_t>(r.rows()));
  for (int k = 0; k < channel.battery_levels(); ++k) {
    for (int s = 0; s < channel.d_in(); ++s) {
      e_in[static_cast<size_t>(channel.in_index(s, k))] = channel.sys_in()[s] + channel.battery()[k];
    }
    for (int s = 0; s < channel.d_out(); ++s) {
      e_out[static_cast<size_t>(channel.out_index(s, k))] = channel.sys_out()[s] + channel.battery()[k];
    }
  }
  rep.gibbs_residuals.resize(static_cast<size_t>(r.rows()));
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      const double v = r(i, j);
      if (v > 0.0) acc += std::exp(std::log(v) + beta * (e_out[static_cast<size_t>(i)] - e_in[static_cast<size_t>(j)]));
    }
    rep.gibbs_residuals[static_cast<size_t>(i)] = std::abs(acc - 1.0);
  }

  for (double v : rep.column_residuals) rep.max_stochasticity_residual = std::max(rep.max_stochasticity_residual, v);
  for (double v : rep.gibbs_residuals) rep.max_gibbs_residual = std::max(rep.max_gibbs_residual, v);
  rep.valid = rep.entries_in_range && rep.max_stochasticity_residual < tol.stochasticity &&
              rep.max_gibbs_residual < tol.gibbs;
  return rep;
}

ThermalChannel identity_channel(const EnergySpectrum& sys, const EnergySpectrum& battery, double beta) {
  const Eigen::Index n = static_cast<Eigen::Index>(sys.size()) * battery.size();
  return ThermalChannel(Matrix::Identity(n, n), sys, sys, battery, beta);
}

ThermalChannel compose(const ThermalChannel& second, const ThermalChannel& first) {
  if (!(first.sys_out() == second.sys_in()) || !(first.battery() == second.battery())) {
    throw Error(ErrorCode::SpectrumMismatch, "cannot compose channels with different intermediate spectra");
  }
  if (first.beta() != second.beta()) throw Error(ErrorCode::DomainError, "channels at different beta");
  return ThermalChannel(second.matrix() * first.matrix(), first.sys_in(), second.sys_out(), first.battery(),
                        first.beta());
}

Vector product_state(const DiagonalState& sys, const DiagonalState& bat) {
  Vector v(static_cast<Eigen::Index>(sys.size()) * bat.size());
  for (int k = 0; k < bat.size(); ++k) {
    for (int s = 0; s < sys.size(); ++s) v(k * sys.size() + s) = sys[s] * bat[k];
  }
  return v;
}

Vector apply(const ThermalChannel& channel, const Vector& joint_in) {
  if (joint_in.size() != channel.matrix().cols()) {
    throw Error(ErrorCode::DimensionMismatch, "joint input has wrong length");
  }
  return channel.matrix() * joint_in;
}

Vector apply(const ThermalChannel& channel, const DiagonalState& sys, const DiagonalState& bat) {
  if (!(sys.spectrum() == channel.sys_in()) || !(bat.spectrum() == channel.battery())) {
    throw Error(ErrorCode::DimensionMismatch, "input states do not live on the channel's spectra");
  }
  return apply(channel, product_state(sys, bat));
}

namespace {

DiagonalState renormalized(std::vector<double> p, const EnergySpectrum& spectrum) {
  double total = 0.0;
  for (double& v : p) {
    v = std::max(v, 0.0);
    total += v;
  }
  for (double& v : p) v /= total;
  return DiagonalState(std::move(p), spectrum);
}

}  // namespace

DiagonalState output_system_marginal(const ThermalChannel& channel, const Vector& joint_out) {
  if (joint_out.size() != channel.matrix().rows()) throw Error(ErrorCode::DimensionMismatch, "joint output length");
  std::vector<double> p(static_cast<size_t>(channel.d_out()), 0.0);
  for (int k = 0; k < channel.battery_levels(); ++k) {
    for (int s = 0; s < channel.d_out(); ++s) p[static_cast<size_t>(s)] += joint_out(channel.out_index(s, k));
  }
  return renormalized(std::move(p), channel.sys_out());
}

DiagonalState output_battery_marginal(const ThermalChannel& channel, const Vector& joint_out) {
  if (joint_out.size() != channel.matrix().rows()) throw Error(ErrorCode::DimensionMismatch, "joint output length");
  std::vector<double> p(static_cast<size_t>(channel.battery_levels()), 0.0);
  for (int k = 0; k < channel.battery_levels(); ++k) {
    for (int s = 0; s < channel.d_out(); ++s) p[static_cast<size_t>(k)] += joint_out(channel.out_index(s, k));
  }
  return renormalized(std::move(p), channel.battery());
}

Matrix extract_subchannels(const ThermalChannel& channel, int k, int k_prime) {
  const int n = channel.battery_levels();
  if (k < 0 || k >= n || k_prime < 0 || k_prime >= n) {
    throw Error(ErrorCode::IndexOutOfRange, "battery level out of range");
  }
  return channel.matrix().block(static_cast<Eigen::Index>(k_prime) * channel.d_out(),
                                static_cast<Eigen::Index>(k) * channel.d_in(), channel.d_out(), channel.d_in());
}

namespace {

struct Extremum {
  double value;
  int k_in;
};

// Largest |x_a - x_b| with a in positions [a_lo, a_hi] and b in [b_lo, b_hi] of one diagonal.
void diagonal_spread(const ThermalChannel& ch, int s_out, int s_in, int offset, int a_lo, int a_hi, int b_lo,
                     int b_hi, EtiViolation& worst) {
  if (a_lo > a_hi || b_lo > b_hi) return;
  auto scan = [&](int lo, int hi) {
    Extremum mn{std::numeric_limits<double>::infinity(), -1}, mx{-std::numeric_limits<double>::infinity(), -1};
    for (int k = lo; k <= hi; ++k) {
      const double v = ch(s_out, k + offset, s_in, k);
      if (v < mn.value) mn = {v, k};
      if (v > mx.value) mx = {v, k};
    }
    return std::pair{mn, mx};
  };
  const auto [a_min, a_max] = scan(a_lo, a_hi);
  const auto [b_min, b_max] = scan(b_lo, b_hi);
  auto record = [&](const Extremum& a, const Extremum& b) {
    const double v = std::abs(a.value - b.value);
    if (v > worst.value) worst = {v, s_out, a.k_in + offset, s_in, a.k_in, b.k_in - a.k_in};
  };
  record(a_max, b_min);
  record(a_min, b_max);
}

}  // namespace

ETIReport check_eti(const ThermalChannel& channel, int k_min, int band_top, double tol, EtiWindow window) {
  if (!channel.battery().uniform_spacing()) {
    throw Error(ErrorCode::NonUniformBattery, "ETI needs an evenly spaced battery starting at 0");
  }
  const int n_top = channel.battery_levels() - 1;
  if (band_top < 0) band_top = n_top;
  if (band_top > n_top || k_min < 0) throw Error(ErrorCode::IndexOutOfRange, "ETI band outside battery range");

  ETIReport rep;
  rep.k_min = k_min;
  rep.band_top = band_top;
  rep.tolerance = tol;
  rep.window = window;
  const int top = band_top;
  // Along a diagonal k' = k + j, every admissible pair is (first position, shifted position);
  // the largest violation is therefore a spread between the two admissible position sets.
  for (int j = -top; j <= top; ++j) {
    // Main: first entry k in [k_min, top] with k + j in [0, top]; shifted entry in the same set.
    const int m_lo = std::max(k_min, -j), m_hi = std::min(top, top - j);
    // Appendix: first entry as above; shifted entry m in [0, top] with m + j in [k_min, top].
    const int b_lo = std::max(0, k_min - j), b_hi = std::min(top, top - j);
    for (int so = 0; so < channel.d_out(); ++so) {
      for (int si = 0; si < channel.d_in(); ++si) {
        diagonal_spread(channel, so, si, j, m_lo, m_hi, m_lo, m_hi, rep.worst_main);
        diagonal_spread(channel, so, si, j, m_lo, m_hi, b_lo, b_hi, rep.worst_appendix);
      }
    }
  }
  rep.holds_main = rep.worst_main.value <= tol;
  rep.holds_appendix = rep.worst_appendix.value <= tol;
  rep.holds = window == EtiWindow::Main ? rep.holds_main : rep.holds_appendix;
  return rep;
}

ThermalChannel random_gibbs_stochastic(const EnergySpectrum& sys, const EnergySpectrum& battery, double beta,
                                       std::uint64_t seed, int num_mixes) {
  if (num_mixes < 0) throw Error(ErrorCode::DomainError, "num_mixes must be non-negative");
  const int d = sys.size();
  const int n = d * battery.size();
  std::vector<double> energy(static_cast<size_t>(n));
  for (int k = 0; k < battery.size(); ++k) {
    for (int s = 0; s < d; ++s) energy[static_cast<size_t>(k * d + s)] = sys[s] + battery[k];
  }
  Matrix r = Matrix::Identity(n, n);
  Rng rng(seed);
  for (int m = 0; m < num_mixes && n > 1; ++m) {
    int a = rng.index(n);
    int b = rng.index(n - 1);
    if (b >= a) ++b;
    if (energy[static_cast<size_t>(a)] > energy[static_cast<size_t>(b)]) std::swap(a, b);
    const double lambda = rng.uniform();
    // g_b / g_a <= 1 because level a has the lower energy.
    const double ratio = std::exp(-beta * (energy[static_cast<size_t>(b)] - energy[static_cast<size_t>(a)]));
    const Eigen::RowVectorXd row_a = r.row(a), row_b = r.row(b);
    r.row(a) = (1.0 - lambda * ratio) * row_a + lambda * row_b;
    r.row(b) = (lambda * ratio) * row_a + (1.0 - lambda) * row_b;
  }
  return ThermalChannel(std::move(r), sys, sys, battery, beta);
}

SubchannelReport validate_subchannels(const WitSubchannels& sub, const Tolerances& tol) {
  const int d = sub.system.size();
  for (const Matrix* m : {&sub.r00, &sub.r01, &sub.r10, &sub.r11}) {
    if (m->rows() != d || m->cols() != d) throw Error(ErrorCode::DimensionMismatch, "subchannel block size");
  }
  SubchannelReport rep;
  rep.min_entry = std::min({sub.r00.minCoeff(), sub.r01.minCoeff(), sub.r10.minCoeff(), sub.r11.minCoeff()});
  const Eigen::RowVectorXd c0 = (sub.r00 + sub.r01).colwise().sum();
  const Eigen::RowVectorXd c1 = (sub.r10 + sub.r11).colwise().sum();
  rep.stochasticity_residual = std::max((c0.array() - 1.0).abs().maxCoeff(), (c1.array() - 1.0).abs().maxCoeff());
  const std::vector<double> gw = gibbs_weights(sub.system, sub.beta);
  const Vector g = Eigen::Map<const Vector>(gw.data(), d);
  const double q = std::exp(-sub.beta * sub.delta);
  const Vector lower = sub.r00 * g + q * (sub.r10 * g) - g;
  const Vector upper = sub.r01 * g + q * (sub.r11 * g) - q * g;
  // Residuals relative to the Gibbs weights they should reproduce.
  double res = 0.0;
  for (int i = 0; i < d; ++i) {
    res = std::max(res, std::abs(lower(i)) / g(i));
    res = std::max(res, std::abs(upper(i)) / (q * g(i)));
  }
  rep.gibbs_residual = res;
  rep.valid = rep.min_entry >= 0.0 && rep.stochasticity_residual < tol.stochasticity && rep.gibbs_residual < tol.gibbs;
  return rep;
}

WitSubchannels subchannels_from_wit_channel(const ThermalChannel& wit_channel) {
  if (wit_channel.battery_levels() != 2 || !(wit_channel.sys_in() == wit_channel.sys_out())) {
    throw Error(ErrorCode::DimensionMismatch, "wit channel needs a two-level battery and one system spectrum");
  }
  WitSubchannels sub;
  sub.r00 = extract_subchannels(wit_channel, 0, 0);
  sub.r01 = extract_subchannels(wit_channel, 0, 1);
  sub.r10 = extract_subchannels(wit_channel, 1, 0);
  sub.r11 = extract_subchannels(wit_channel, 1, 1);
  sub.system = wit_channel.sys_in();
  sub.delta = wit_channel.battery()[1] - wit_channel.battery()[0];
  sub.beta = wit_channel.beta();
  return sub;
}

WitSubchannels random_wit_subchannels(const EnergySpectrum& sys, double delta, double beta, std::uint64_t seed,
                                      int num_mixes) {
  const EnergySpectrum wit({0.0, delta}, "wit");
  return subchannels_from_wit_channel(random_gibbs_stochastic(sys, wit, beta, seed, num_mixes));
}

namespace {

void write_levels(std::ostream& out, const std::vector<double>& levels) {
  for (size_t i = 0; i < levels.size(); ++i) out << (i ? " " : "") << levels[i];
}

void write_rows(std::ostream& out, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

// Next line that is neither blank nor a plain comment; `# key ...` lines go to tagged.
bool next_data_line(std::istream& in, std::string& line, std::vector<std::string>* tagged) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (tagged) tagged->push_back(line.substr(first + 1));
      continue;
    }
    return true;
  }
  return false;
}

std::vector<double> parse_row(const std::string& line) {
  std::istringstream ss(line);
  std::vector<double> row;
  std::string tok;
  while (ss >> tok) {
    try {
      size_t used = 0;
      row.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad number '" + tok + "'");
    }
  }
  return row;
}

Matrix read_block(std::istream& in, int rows, int cols, std::vector<std::string>* tagged) {
  Matrix m(rows, cols);
  std::string line;
  for (int i = 0; i < rows; ++i) {
    if (!next_data_line(in, line, tagged)) throw Error(ErrorCode::ParseError, "matrix ended early");
    const auto row = parse_row(line);
    if (static_cast<int>(row.size()) != cols) throw Error(ErrorCode::ParseError, "row has wrong length");
    for (int j = 0; j < cols; ++j) m(i, j) = row[static_cast<size_t>(j)];
  }
  return m;
}

}  // namespace

void write_channel(std::ostream& out, const ThermalChannel& channel) {
  const auto old_precision = out.precision(17);
  out << channel.d_in() << ' ' << channel.d_out() << ' ' << channel.battery_levels() << ' ' << channel.beta() << '\n';
  write_rows(out, channel.matrix());
  out << "# sys_in ";
  write_levels(out, channel.sys_in().levels());
  out << "\n# sys_out ";
  write_levels(out, channel.sys_out().levels());
  out << "\n# battery ";
  write_levels(out, channel.battery().levels());
  out << '\n';
  out.precision(old_precision);
}

ThermalChannel read_channel(std::istream& in) {
  std::string line;
  std::vector<std::string> tagged;
  if (!next_data_line(in, line, &tagged)) throw Error(ErrorCode::ParseError, "missing channel header");
  std::istringstream header(line);
  int d_in = 0, d_out = 0, n = 0;
  double beta = 0.0;
  if (!(header >> d_in >> d_out >> n >> beta) || d_in <= 0 || d_out <= 0 || n <= 0) {
    throw Error(ErrorCode::ParseError, "bad channel header '" + line + "'");
  }
  Matrix r = read_block(in, d_out * n, d_in * n, &tagged);
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] == '#') tagged.push_back(line.substr(first + 1));
  }
  std::vector<double> sys_in, sys_out, battery;
  for (const auto& t : tagged) {
    std::istringstream ss(t);
    std::string key;
    ss >> key;
    std::string rest;
    std::getline(ss, rest);
    if (key == "sys_in") sys_in = parse_row(rest);
    if (key == "sys_out") sys_out = parse_row(rest);
    if (key == "battery") battery = parse_row(rest);
  }
  if (sys_in.empty()) sys_in.assign(static_cast<size_t>(d_in), 0.0);
  if (sys_out.empty()) sys_out.assign(static_cast<size_t>(d_out), 0.0);
  if (battery.empty()) throw Error(ErrorCode::ParseError, "channel file lacks the battery levels line");
  return ThermalChannel(std::move(r), EnergySpectrum(sys_in, "sys_in"), EnergySpectrum(sys_out, "sys_out"),
                        EnergySpectrum(battery, "battery"), beta);
}

void write_subchannels(std::ostream& out, const WitSubchannels& sub) {
  const auto old_precision = out.precision(17);
  out << sub.system.size() << ' ' << sub.delta << ' ' << sub.beta << '\n';
  write_levels(out, sub.system.levels());
  out << '\n';
  for (const Matrix* m : {&sub.r00, &sub.r01, &sub.r10, &sub.r11}) write_rows(out, *m);
  out.precision(old_precision);
}

WitSubchannels read_subchannels(std::istream& in) {
  std::string line;
  if (!next_data_line(in, line, nullptr)) throw Error(ErrorCode::ParseError, "missing subchannel header");
  std::istringstream header(line);
  int d = 0;
  WitSubchannels sub;
  if (!(header >> d >> sub.delta >> sub.beta) || d <= 0) {
    throw Error(ErrorCode::ParseError, "bad subchannel header '" + line + "'");
  }
  if (!next_data_line(in, line, nullptr)) throw Error(ErrorCode::ParseError, "missing system levels");
  const auto levels = parse_row(line);
  if (static_cast<int>(levels.size()) != d) throw Error(ErrorCode::ParseError, "system levels length");
  sub.system = EnergySpectrum(levels, "system");
  sub.r00 = read_block(in, d, d, nullptr);
  sub.r01 = read_block(in, d, d, nullptr);
  sub.r10 = read_block(in, d, d, nullptr);
  sub.r11 = read_block(in, d, d, nullptr);
  return sub;
}

}  // namespace thermo
