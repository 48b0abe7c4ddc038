#pragma once

#include <cstdint>

namespace qsl {

// Number of independent repeated projective measurements.
struct SampleBudget {
  std::int64_t n = 1;
};

// Plug-in binomial estimate: p_hat = successes/trials with projection noise
// delta_p = sqrt(p_hat (1 - p_hat) / trials). The noise uses the estimated
// probability, which is what an experimenter can actually compute.
struct BinomialEstimate {
  std::int64_t successes = 0;
  std::int64_t trials = 1;
  double p_hat = 0.0;
  double delta_p = 0.0;

  static BinomialEstimate from_counts(std::int64_t successes, std::int64_t trials);
};

// Critical fidelity F0 = n / (n + 1): distinguishing two states under
// projection noise requires their fidelity to fall to F0 or below.
double critical_fidelity(const SampleBudget& budget);

// SNR >= 1 criterion |p - p'| >= dp + dp'. A degenerate tie (zero signal
// and zero noise on both sides) counts as NOT distinguishable.
bool snr_distinguishable(const BinomialEstimate& a, const BinomialEstimate& b);

// Probability that n measurements in the input-state basis flag the output
// state as distinguishable, by exact enumeration of the binomial outcome
// m ~ B(n, 1 - F) and the plug-in criterion against the deterministic
// reference (p = 1, dp = 0). With the plug-in noise the criterion reduces
// to m >= 1; the enumeration keeps the criterion explicit so this routine
// can serve as an oracle for sampled experiments.
double detection_probability(double true_fidelity, const SampleBudget& budget);

// Lower bound on the detectable phase from the two speed-limit forms,
// hbar = 1. Components are reported separately; a component with zero
// denominator is +infinity (that channel carries no information).
struct PhaseBound {
  double ml_component = 0.0;  // 2 / (pi * n * <G - G_g>)
  double mt_component = 0.0;  // 1 / (sqrt(n) * dG)
  double bound = 0.0;         // max of the two
};

PhaseBound min_detectable_phase(const SampleBudget& budget, double gen_mean_above_ground,
                                double gen_stddev);

}  // namespace qsl
