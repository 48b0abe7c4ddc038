#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qsl/pauli.hpp"

namespace qsl {

// Parameterized signal Hamiltonian H(omega, t) with an optional analytic
// parameter derivative; when absent, d/domega is taken by central finite
// differences with step 1e-6 * max(1, |omega|).
struct ParamHamiltonian {
  std::function<PauliHamiltonian(double omega, double t)> sampler;
  std::function<PauliHamiltonian(double omega, double t)> d_omega_sampler;  // optional

  PauliHamiltonian at(double omega, double t) const;
  PauliHamiltonian d_omega_at(double omega, double t) const;
};

// Gauge-fixed time series of the instantaneous eigensystem of
// dH/domega(omega_c, t). Branch order is by eigenvalue (mu_max >= mu_min);
// phases follow the parallel-transport convention, so consecutive
// same-branch overlaps are real and positive.
struct EigenframeTrace {
  std::vector<double> grid;
  std::vector<double> mu_max;
  std::vector<double> mu_min;
  std::vector<QubitState> frame_max;
  std::vector<QubitState> frame_min;
};

inline constexpr double kFrameDegeneracyGap = 1e-12;

// Tracks the eigenframe over a strictly increasing grid (>= 2 points).
// Throws DegenerateFrameError when the eigenvalue gap closes below
// kFrameDegeneracyGap at a grid point, or when branch continuity breaks
// between points (a crossing slipped between samples). Construction is a
// left-to-right recurrence; the finished trace is immutable and safe to
// share across threads.
EigenframeTrace eigenframe_track(const ParamHamiltonian& ph, double omega_c,
                                 const std::vector<double>& grid);

// Rewrites a branch of frames into the parallel-transport gauge: the first
// frame's largest component is made real positive, and every consecutive
// overlap is rotated to be real positive. Idempotent; exposed so phase
// perturbations can be shown to wash out.
void fix_gauge(std::vector<QubitState>& branch);

// Control Hamiltonian H_c(t) = -H(omega_c, t) + i sum_k |d/dt psi_k><psi_k|.
// The frame derivative uses central differences on the gauge-fixed trace
// (one-sided at the ends); the kick term is symmetrized to exact
// Hermiticity by projection onto Pauli form and interpolated linearly
// between grid points.
HamiltonianSampler control_hamiltonian(const ParamHamiltonian& ph,
                                       const EigenframeTrace& trace, double omega_c);

// Interrogation-time bounds under control, for a parameter deviation of
// magnitude signal_strength: smallest t with
//   (s/2) \int (mu_max - mu_min) dt >= (pi/2) * {beta, alpha}(f0).
// The variance bound always covers the mean-energy bound here.
struct ControlledBound {
  double tau_mt = 0.0;
  double tau_ml = 0.0;
  double signal_strength = 0.0;
  double f0 = 1.0;
};

// Throws InfeasibleError when the trace window cannot accumulate the target.
ControlledBound controlled_qsl(const EigenframeTrace& trace, double signal_strength,
                               double f0);

// \int (mu_max - mu_min) dt over the whole trace window (trapezoid on the
// grid). The branch phases are s/2 times this, additive across windows.
double gap_integral(const EigenframeTrace& trace);

struct FidelitySample {
  double t = 0.0;
  double fidelity = 1.0;
};

// Propagates the equal-weight superposition of the extremal frame vectors
// under H(omega_true, t) + H_c(t), and the reference under
// H(omega_c, t) + H_c(t); returns the fidelity between the two at each of
// `steps` uniform sample times across [grid.front(), grid.front()+horizon].
// Valid when |omega_true - omega_c| is small enough that H is effectively
// linear in the parameter across the gap (exact for linear parameters).
std::vector<FidelitySample> simulate_controlled(const ParamHamiltonian& ph, double omega_true,
                                                double omega_c, const EigenframeTrace& trace,
                                                double horizon, int steps,
                                                double step_tol = 1e-12);

// First t where a sampled fidelity trace falls to f0, by linear
// interpolation between samples; nullopt when it never does.
std::optional<double> fidelity_crossing(const std::vector<FidelitySample>& trace, double f0);

}  // namespace qsl
