#include "qsl/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsl/errors.hpp"

namespace qsl {

double PauliHamiltonian::axis_norm() const {
  return std::sqrt(ax * ax + ay * ay + az * az);
}

QubitState QubitState::normalized() const {
  const double n = std::sqrt(norm_sq());
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero state");
  return {amp0 / n, amp1 / n};
}

double fidelity(const QubitState& a, const QubitState& b) {
  const double f = std::norm(inner(a, b));
  return std::clamp(f, 0.0, 1.0);
}

Eigensystem eig(const PauliHamiltonian& h) {
  const double r = h.axis_norm();
  Eigensystem es;
  es.e_plus = h.a0 + r;
  es.e_minus = h.a0 - r;
  if (r < kDegeneracyThreshold) {
    es.degenerate = true;
    es.v_plus = {1.0, 0.0};
    es.v_minus = {0.0, 1.0};
    return es;
  }
  // Eigenvector of a.sigma for +r, picking the representation with the
  // larger norm to avoid cancellation near the poles.
  const Complex off(h.ax, h.ay);  // lower-left entry ax + i*ay
  QubitState vp;
  if (h.az >= 0.0) {
    vp = QubitState{Complex(r + h.az, 0.0), off}.normalized();
  } else {
    vp = QubitState{std::conj(off), Complex(r - h.az, 0.0)}.normalized();
  }
  es.v_plus = vp;
  // Exact orthogonal complement; orthonormal to machine precision.
  es.v_minus = {-std::conj(vp.amp1), std::conj(vp.amp0)};
  return es;
}

QubitState evolve_fixed_axis(const PauliHamiltonian& h, double phase_integral,
                             const QubitState& state) {
  const double r = h.axis_norm();
  const Complex global = std::polar(1.0, -h.a0 * phase_integral);
  if (r == 0.0) return {global * state.amp0, global * state.amp1};
  const double theta = r * phase_integral;
  const double c = std::cos(theta);
  const double s = std::sin(theta) / r;  // sin(theta) * n, folded with 1/r
  const Complex i(0.0, 1.0);
  // exp(-i theta n.sigma) = cos I - i sin (n.sigma)
  const Complex u00 = c - i * s * h.az;
  const Complex u01 = -i * s * Complex(h.ax, -h.ay);
  const Complex u10 = -i * s * Complex(h.ax, h.ay);
  const Complex u11 = c + i * s * h.az;
  return {global * (u00 * state.amp0 + u01 * state.amp1),
          global * (u10 * state.amp0 + u11 * state.amp1)};
}

HamStats stats(const PauliHamiltonian& h, const QubitState& state) {
  // Bloch vector of the state.
  const Complex cross = std::conj(state.amp0) * state.amp1;
  const double bx = 2.0 * cross.real();
  const double by = 2.0 * cross.imag();
  const double bz = std::norm(state.amp0) - std::norm(state.amp1);
  const double r = h.axis_norm();
  const double axis_mean = h.ax * bx + h.ay * by + h.az * bz;  // <a.sigma>
  HamStats out;
  out.mean = h.a0 + axis_mean;
  out.stddev = std::sqrt(std::max(0.0, r * r - axis_mean * axis_mean));
  out.e_ground = h.a0 - r;
  return out;
}

namespace {

// One pass of piecewise-constant midpoint exponentials over n equal steps.
QubitState march(const HamiltonianSampler& sampler, double t0, double t1, long long n,
                 const QubitState& state) {
  const double dt = (t1 - t0) / static_cast<double>(n);
  QubitState psi = state;
  for (long long j = 0; j < n; ++j) {
    const double tm = t0 + (static_cast<double>(j) + 0.5) * dt;
    psi = evolve_fixed_axis(sampler(tm), dt, psi);
  }
  return psi;
}

double state_distance(const QubitState& a, const QubitState& b) {
  return std::sqrt(std::norm(a.amp0 - b.amp0) + std::norm(a.amp1 - b.amp1));
}

}  // namespace

QubitState propagate_td(const HamiltonianSampler& sampler, double t0, double t1,
                        const QubitState& state, double tol, int max_depth) {
  if (t1 < t0) throw std::invalid_argument("propagate_td: t1 < t0");
  if (tol <= 0.0) throw std::invalid_argument("propagate_td: tol must be positive");
  if (t1 == t0) return state;

  // Start with enough steps that the per-step rotation angle is modest.
  const double span = t1 - t0;
  double a_max = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double ts = t0 + span * (j + 0.5) / 8.0;
    a_max = std::max(a_max, sampler(ts).axis_norm());
  }
  long long n = 4;
  while (a_max * span / static_cast<double>(n) > 0.25 && n < (1LL << 16)) n *= 2;

  QubitState coarse = march(sampler, t0, t1, n, state);
  for (int depth = 0; depth < max_depth; ++depth) {
    n *= 2;
    const QubitState fine = march(sampler, t0, t1, n, state);
    if (state_distance(fine, coarse) < tol) return fine;
    coarse = fine;
  }
  throw NonConvergenceError("propagate_td: refinement exceeded maximum depth");
}

QubitState equal_weight_state(const Eigensystem& es) {
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  return QubitState{inv_sqrt2 * (es.v_plus.amp0 + es.v_minus.amp0),
                    inv_sqrt2 * (es.v_plus.amp1 + es.v_minus.amp1)}
      .normalized();
}

QubitState superposition_state(const Eigensystem& es, double c0_sq) {
  if (c0_sq < 0.0 || c0_sq > 1.0)
    throw std::invalid_argument("superposition_state: c0_sq outside [0, 1]");
  const double c0 = std::sqrt(c0_sq);
  const double c1 = std::sqrt(1.0 - c0_sq);
  return QubitState{c0 * es.v_plus.amp0 + c1 * es.v_minus.amp0,
                    c0 * es.v_plus.amp1 + c1 * es.v_minus.amp1}
      .normalized();
}

}  // namespace qsl
