#pragma once

#include <optional>
#include <vector>

namespace qsl {

// Fidelity distances entering the two speed limits:
//   beta(F) = (2/pi) * arccos(sqrt(F)), alpha(F) = beta(F)^2.
// alpha is implemented exactly as beta squared; the mean-energy bound has
// no exact closed form for arbitrary fidelity, and this choice keeps every
// emitted number reproducible.
struct DistanceFunctions {
  double f = 1.0;
  double beta = 0.0;
  double alpha = 0.0;
};

// arccos(sqrt(f)) evaluated as atan2(sqrt(1-f), sqrt(f)): stable for f
// near both 0 and 1.
double acos_sqrt(double f);

// Large-budget shortcut arccos(sqrt(F0(n))) ~ 1/sqrt(n).
double acos_sqrt_f0_large_n(double n);

DistanceFunctions distances(double f0);

// Scalar time modulation r(t) of a fixed-axis signal, defined on
// [0, t_max]. Sample envelopes interpolate linearly and hold their end
// values; evaluation is side-effect-free.
class EnvelopeSpec {
 public:
  enum class Kind { constant, sinusoid, samples };

  static EnvelopeSpec constant(double t_max);
  static EnvelopeSpec sinusoid(double k, double t_max);
  static EnvelopeSpec samples(std::vector<double> times, std::vector<double> values,
                              double t_max);

  double operator()(double t) const;
  double horizon() const { return t_max_; }
  Kind kind() const { return kind_; }
  double sinusoid_k() const { return k_; }

  // Scan step that resolves the envelope's own structure (oscillation
  // period or sample spacing) for non-monotone crossing searches.
  double scan_dt() const;

  // Upper bound on |r(t)| over the horizon.
  double max_abs() const;

 private:
  EnvelopeSpec(Kind kind, double t_max) : kind_(kind), t_max_(t_max) {}

  Kind kind_;
  double t_max_;
  double k_ = 0.0;
  std::vector<double> times_;
  std::vector<double> values_;
};

// Lower bounds on the interrogation time. Infeasible (nullopt) is a
// first-class result, not an error.
struct BoundResult {
  std::optional<double> tau_mt;
  std::optional<double> tau_ml;
  std::optional<double> t_min;  // max of the two when both are finite
  DistanceFunctions distances;
  bool feasible = false;
};

BoundResult make_bound_result(std::optional<double> tau_mt, std::optional<double> tau_ml,
                              const DistanceFunctions& d);

// Variance bound for a time-independent H: (pi / (2 dH)) * beta(f0).
double mt_static(double stddev_h, double f0);

// Mean-energy bound with an explicit reference level:
// (pi / (2 (<H> - E_r))) * alpha(f0). Tightest at E_r = E_g; any lower
// reference is valid but looser. Throws InvalidReferenceError when the
// reference sits above the ground energy.
double ml_static(double mean_h, double e_ground, double e_reference, double f0);

// Smallest t with \int_0^t dh * |r(s)| ds >= (pi/2) beta(f0); nullopt when
// the horizon integral falls short.
std::optional<double> mt_envelope(double stddev_h_unit, const EnvelopeSpec& env, double f0);

// Smallest t with \int_0^t [<h> r(s) + (omega/2) |r(s)|] ds >= (pi/2) alpha(f0).
// The integrand is the mean energy above the instantaneous ground level and
// is nonnegative for any physical <h>.
std::optional<double> ml_envelope(double mean_h_unit, double omega, const EnvelopeSpec& env,
                                  double f0);

// First time the actual fidelity
//   F(t) = 1 - 4 c (1-c) sin^2((omega/2) \int_0^t r ds),  c = c0_sq,
// falls to f0. Infeasible when the fidelity floor (1 - 2c)^2 exceeds f0,
// or when no crossing occurs within the envelope horizon.
std::optional<double> actual_crossing_time(double omega, double c0_sq,
                                           const EnvelopeSpec& env, double f0);

enum class ProbeKind { single, product, ghz };
enum class BoundKind { mt, ml };

// M-body speedups: the variance bound gains sqrt(M) for product probes and
// M for GHZ probes; the mean-energy bound gains M for both.
double scale_many_body(double tau, int m, ProbeKind kind, BoundKind which);

// c0^2 below which the mean-energy bound overtakes the variance bound:
// c^2 = beta^2 / (1 + beta^2). Independent of the signal amplitude.
double mlb_vs_mtb_crossover(double omega, double f0);

}  // namespace qsl
