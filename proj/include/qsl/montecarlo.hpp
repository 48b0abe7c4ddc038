#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qsl/distinguish.hpp"

namespace qsl {

// One simulated experiment: n projective measurements of an output state
// whose fidelity with the measurement basis is true_fidelity, repeated
// `replicates` times. Replicates draw from counter-keyed streams, so the
// result is bitwise reproducible and order-independent.
struct McConfig {
  double true_fidelity = 1.0;
  std::int64_t n = 1;
  std::int64_t replicates = 1;
  std::uint64_t seed = 0;
};

// Exact inverse-CDF binomial draw from a uniform variate; deterministic
// across platforms (no library samplers).
std::int64_t binomial_inverse_cdf(std::int64_t n, double p, double u);

// Fraction of replicates whose plug-in SNR criterion flags the output as
// distinguishable from the deterministic reference.
double run_experiment(const McConfig& cfg);

struct SweepRow {
  double t = 0.0;
  double detection_rate = 0.0;  // empirical
  double exact_rate = 0.0;      // binomial enumeration oracle
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Smallest grid time whose exact rate reaches the rate at the critical
  // fidelity, detection_probability(F0(n), n); unset when never reached.
  std::optional<double> threshold_time;
};

SweepResult sweep_time(const std::function<double(double)>& fidelity_of_t,
                       const std::vector<double>& t_grid, std::int64_t n,
                       std::int64_t replicates, std::uint64_t seed);

}  // namespace qsl
