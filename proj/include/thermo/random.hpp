#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace thermo {

// Seeded generator with portable uniform draws (std distributions are
// implementation-defined, so the mapping from bits to values is done here).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  int index(int n) { return static_cast<int>(uniform() * n); }
  // Uniform integer in [lo, hi].
  int integer(int lo, int hi) { return lo + index(hi - lo + 1); }

  // Random probability vector of length n (exponential spacings).
  std::vector<double> simplex(int n);

 private:
  std::mt19937_64 engine_;
};

inline std::vector<double> Rng::simplex(int n) {
  std::vector<double> p(static_cast<size_t>(n));
  double total = 0.0;
  for (double& v : p) {
    v = -std::log1p(-uniform());
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace thermo
