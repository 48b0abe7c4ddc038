#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/control.hpp"

namespace qsl {

// Pinned physical constants (CODATA 2018) so emitted curves are
// bit-reproducible. hbar = 1 everywhere else in the library; these enter
// only where results are converted to laboratory units.
inline constexpr double kHbarJs = 1.054571817e-34;       // J s
inline constexpr double kBohrMagnetonJPerT = 9.2740100783e-24;  // J / T

// Single-mode AC signal along a fixed axis: H(t) = (omega/2) sin(k t) sz,
// with omega the Rabi amplitude (rad/s) and k the oscillation frequency.
// k = 0 degenerates to a static field of the same amplitude.
struct AcScenario {
  double omega = 1.0;
  double k = 0.0;
  std::int64_t n = 1;
  int m = 1;
  ProbeKind kind = ProbeKind::single;
};

// Rotating field H(t) = (omega/2)(cos(k t) sx + sin(k t) sz) with k =
// epsilon * omega; estimating omega and k require distinct control schemes.
enum class RotatingTarget { omega, k };

struct RotatingScenario {
  double omega = 1.0;
  double epsilon = 0.1;
  RotatingTarget target = RotatingTarget::omega;
  std::int64_t n = 1;
};

// Effective amplitude after the probe speedup: omega (single), m * omega
// (GHZ), sqrt(m) * omega (product; the variance-bound speedup extended to
// the frequency constraint).
double effective_omega(double omega, int m, ProbeKind kind);

// Largest detectable oscillation frequency, omega_eff / arccos(sqrt(F0)).
double ac_kmax(const AcScenario& s);

// Minimum interrogation time (saturated variance bound within the first
// half period); nullopt when k exceeds ac_kmax.
std::optional<double> ac_tmin(const AcScenario& s);

// Fidelity of the AC probe versus interrogation time for the equal-weight
// state: F(t) = cos^2((omega_eff / 2k)(1 - cos k t)).
std::function<double(double)> ac_fidelity(const AcScenario& s);

struct RotatingTimes {
  double tau_mt = 0.0;
  double tau_ml = 0.0;
  double t_min = 0.0;  // the variance bound covers the mean-energy bound
};

// Closed-form controlled bounds for the rotating field:
//   omega target: (pi/omega) * {beta, alpha}(F0)
//   k target:     sqrt(2 pi {beta, alpha}(F0) / (epsilon omega^2))
RotatingTimes rotating_tmin(const RotatingScenario& s);

// Parameterized Hamiltonian (with analytic parameter derivative) for the
// rotating field, for use with the control module. The signal strength to
// pair with controlled_qsl for detect-presence is the parameter value
// itself (omega, or k = epsilon * omega).
ParamHamiltonian rotating_param_hamiltonian(const RotatingScenario& s);

// Smallest field amplitude measurable at a given oscillation frequency:
// B_min = hbar * (2 pi f) * arccos(sqrt(F0)) / (2 mu_B * m_eff).
double biomagnetic_threshold(double frequency_hz, std::int64_t n, int m, ProbeKind kind);

struct Fig1Row {
  double c0_sq = 0.5;
  double tau_mt = 0.0;
  double tau_ml = 0.0;
  std::optional<double> t_actual;
  bool feasible = false;
};

// Bounds and actual crossing time across a grid of probe weights for a
// constant-envelope signal of amplitude omega, budget n; m-body variants
// scale the bounds and transform the actual crossing accordingly (GHZ:
// m-fold phase rate; product: per-site fidelity target F0^(1/m)).
std::vector<Fig1Row> fig1_dataset(double omega, std::int64_t n,
                                  const std::vector<double>& c0_grid, int m = 1,
                                  ProbeKind kind = ProbeKind::single);

}  // namespace qsl
