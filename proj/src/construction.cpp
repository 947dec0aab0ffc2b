#include "thermo/construction.hpp"

#include "thermo/errors.hpp"
#include "thermo/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace thermo {

ThermalChannel extend_to_oscillator(const WitSubchannels& sub, int N) {
  if (N < 2) throw Error(ErrorCode::DomainError, "oscillator extension needs N >= 2");
  const SubchannelReport check = validate_subchannels(sub);
  if (!check.valid) {
    throw Error(ErrorCode::InvalidSubchannels,
                "stochasticity residual " + std::to_string(check.stochasticity_residual) + ", Gibbs residual " +
                    std::to_string(check.gibbs_residual) + ", min entry " + std::to_string(check.min_entry));
  }
  const int d = sub.system.size();

  // powers[i] = R01^i; vacuum[i] = R00 R01^i; ladder[i] = R00 R01^i R11; top[m] = R01^m R11.
  std::vector<Matrix> powers(static_cast<size_t>(N) + 1);
  powers[0] = Matrix::Identity(d, d);
  for (int i = 1; i <= N; ++i) powers[static_cast<size_t>(i)] = powers[static_cast<size_t>(i) - 1] * sub.r01;
  std::vector<Matrix> vacuum(static_cast<size_t>(N)), ladder(static_cast<size_t>(N)), top(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) {
    vacuum[static_cast<size_t>(i)] = sub.r00 * powers[static_cast<size_t>(i)];
    ladder[static_cast<size_t>(i)] = vacuum[static_cast<size_t>(i)] * sub.r11;
    top[static_cast<size_t>(i)] = i == 0 ? sub.r11 : Matrix(powers[static_cast<size_t>(i)] * sub.r11);
  }

  const Eigen::Index dim = static_cast<Eigen::Index>(d) * (N + 1);
  Matrix r = Matrix::Zero(dim, dim);
  auto put = [&](int k_out, int k_in, const Matrix& block) {
    r.block(static_cast<Eigen::Index>(k_out) * d, static_cast<Eigen::Index>(k_in) * d, d, d) = block;
  };
  for (int i = 0; i < N; ++i) put(i, 0, vacuum[static_cast<size_t>(i)]);
  put(N, 0, powers[static_cast<size_t>(N)]);
  for (int k = 1; k <= N; ++k) {
    put(k - 1, k, sub.r10);
    for (int i = 0; k + i <= N - 1; ++i) put(k + i, k, ladder[static_cast<size_t>(i)]);
    put(N, k, top[static_cast<size_t>(N - k)]);
  }
  return ThermalChannel(std::move(r), sub.system, sub.system, EnergySpectrum::uniform(sub.delta, N, "oscillator"),
                        sub.beta);
}

double spectral_radius_estimate(const Matrix& m, int steps) {
  const Matrix a = m.cwiseAbs();
  Vector v = Vector::Ones(a.cols()) / static_cast<double>(a.cols());
  double estimate = 0.0;
  for (int i = 0; i < steps; ++i) {
    Vector w = a * v;
    const double norm = w.lpNorm<1>();
    if (norm == 0.0) return 0.0;
    estimate = norm / v.lpNorm<1>();
    v = w / norm;
  }
  return estimate;
}

double truncation_tail(const WitSubchannels& sub, int N) {
  Matrix p = Matrix::Identity(sub.r01.rows(), sub.r01.cols());
  for (int i = 0; i < N; ++i) p = p * sub.r01;
  return norm1(p);
}

int auto_size_levels(const WitSubchannels& sub, double target, int cap) {
  Matrix p = sub.r01;
  for (int n = 1; n <= cap; ++n) {
    if (norm1(p) < target) return std::max(n, 2);
    p = p * sub.r01;
  }
  return cap;
}

namespace {

Vector as_vector(const DiagonalState& x, const WitSubchannels& sub) {
  if (!(x.spectrum() == sub.system)) throw Error(ErrorCode::SpectrumMismatch, "state is not on the wit system");
  return Eigen::Map<const Vector>(x.probs().data(), x.size());
}

}  // namespace

double closed_form_average_work(const WitSubchannels& sub, const DiagonalState& x) {
  const double radius = spectral_radius_estimate(sub.r01);
  if (radius >= 1.0 - 1e-10) {
    throw Error(ErrorCode::NonConvergentSeries, "spectral radius of R01 is " + std::to_string(radius));
  }
  const int d = sub.system.size();
  const Matrix lhs = Matrix::Identity(d, d) - sub.r01;
  const Vector y = lhs.partialPivLu().solve(sub.r11 * as_vector(x, sub));
  return sub.delta * (y.sum() - 1.0);
}

double finite_average_work(const WitSubchannels& sub, const DiagonalState& x, int N, int k) {
  if (k < 1 || k > N) throw Error(ErrorCode::IndexOutOfRange, "battery level must be in [1, N]");
  Vector v = sub.r11 * as_vector(x, sub);
  double total = 0.0;
  for (int j = 0; j <= N - k; ++j) {
    total += v.sum();
    v = sub.r01 * v;
  }
  return sub.delta * (total - 1.0);
}

ExtensionReport verify_extension(const ThermalChannel& channel, const WitSubchannels* sub) {
  ExtensionReport rep;
  const int N = channel.battery_levels() - 1;
  rep.num_steps = N;
  const Tolerances tol;
  const ValidationReport v = validate(channel, tol);
  rep.max_stochasticity_residual = v.max_stochasticity_residual;
  rep.max_gibbs_residual = v.max_gibbs_residual;
  rep.stochastic_ok = v.entries_in_range && v.max_stochasticity_residual < tol.stochasticity;
  rep.gibbs_ok = v.max_gibbs_residual < tol.gibbs;

  const ETIReport eti = check_eti(channel, 1, N - 1, 1e-14);
  rep.eti_max_violation = eti.worst_main.value;
  rep.eti_ok = eti.holds_main;

  const Matrix reference = sub ? sub->r10 : extract_subchannels(channel, 1, 0);
  rep.blocks_ok = true;
  for (int k = 1; k <= N; ++k) {
    const Matrix block = extract_subchannels(channel, k, k - 1);
    if (block.rows() != reference.rows() || block.cols() != reference.cols()) {
      rep.blocks_ok = false;
      rep.block_mismatch_level = k;
      break;
    }
    const double diff = (block - reference).cwiseAbs().maxCoeff();
    // Exact equality: the blocks are copies of one matrix, not recomputations.
    if (!(block.array() == reference.array()).all()) {
      if (rep.blocks_ok) rep.block_mismatch_level = k;
      rep.blocks_ok = false;
    }
    rep.block_max_difference = std::max(rep.block_max_difference, diff);
  }
  rep.passed = rep.stochastic_ok && rep.gibbs_ok && rep.eti_ok && rep.blocks_ok;
  return rep;
}

WitSubchannels formation_subchannels(const DiagonalState& rho, const DiagonalState& sigma, double beta, double delta) {
  if (!(rho.spectrum() == sigma.spectrum())) throw Error(ErrorCode::SpectrumMismatch, "formation needs one spectrum");
  if (!(delta > 0.0)) throw Error(ErrorCode::DomainError, "formation primitive needs a positive gap");
  const EnergySpectrum& sys = rho.spectrum();
  const int d = sys.size();
  const DiagonalState tau = gibbs_state(sys, beta);

  bool rho_is_gibbs = true;
  for (int i = 0; i < d; ++i) rho_is_gibbs = rho_is_gibbs && std::abs(rho[i] - tau[i]) <= 1e-14;

  if (rho_is_gibbs) {
    // R10 resets to sigma, R01 = e^{-beta delta} I, R11 = 0; R00 absorbs what the
    // Gibbs pair conditions leave over, spread proportionally to the Gibbs weights.
    const double q = std::exp(-beta * delta);
    const std::vector<double> g = gibbs_weights(sys, beta);
    double z = 0.0;
    for (double v : g) z += v;
    Vector rest(d);
    for (int i = 0; i < d; ++i) {
      double v = g[static_cast<size_t>(i)] - q * z * sigma[i];
      if (v < 0.0) {
        if (v < -1e-11 * g[static_cast<size_t>(i)]) {
          throw Error(ErrorCode::Infeasible, "gap too small to form the target state from equilibrium");
        }
        v = 0.0;
      }
      rest(i) = v;
    }
    WitSubchannels sub;
    sub.system = sys;
    sub.delta = delta;
    sub.beta = beta;
    sub.r00 = rest * Eigen::RowVectorXd::Ones(d) / z;
    sub.r01 = q * Matrix::Identity(d, d);
    sub.r10 = Eigen::Map<const Vector>(sigma.probs().data(), d) * Eigen::RowVectorXd::Ones(d);
    sub.r11 = Matrix::Zero(d, d);
    return sub;
  }

  const auto [p, target] = wit_formation_pair(rho, sigma, delta);
  auto transport = solve_gibbs_transport(p, target, beta);
  if (!transport) throw Error(ErrorCode::Infeasible, "no wit thermal operation forms the target state");
  const ThermalChannel wit(std::move(*transport), sys, sys, EnergySpectrum({0.0, delta}, "wit"), beta);
  return subchannels_from_wit_channel(wit);
}

DeterministicWork theorem3_deterministic_work(const DiagonalState& rho, const DiagonalState& sigma, double beta,
                                              int N) {
  DeterministicWork out;
  out.delta = min_formation_gap(rho, sigma, beta);
  if (out.delta == 0.0) return out;
  out.subchannels = formation_subchannels(rho, sigma, beta, out.delta);
  out.channel = extend_to_oscillator(out.subchannels, N);
  return out;
}

}  // namespace thermo
