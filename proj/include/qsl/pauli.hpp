#pragma once

#include <complex>
#include <functional>

namespace qsl {

using Complex = std::complex<double>;

// Single-qubit Hermitian operator H = a0*I + ax*sx + ay*sy + az*sz.
// All coefficients are angular frequencies (hbar = 1); Hermiticity is
// structural and the eigenvalues are a0 +/- |a| in closed form.
struct PauliHamiltonian {
  double a0 = 0.0;
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;

  double axis_norm() const;  // |a| = sqrt(ax^2 + ay^2 + az^2)

  PauliHamiltonian operator+(const PauliHamiltonian& o) const {
    return {a0 + o.a0, ax + o.ax, ay + o.ay, az + o.az};
  }
  PauliHamiltonian operator-() const { return {-a0, -ax, -ay, -az}; }
  PauliHamiltonian operator*(double s) const { return {a0 * s, ax * s, ay * s, az * s}; }
};

inline PauliHamiltonian operator*(double s, const PauliHamiltonian& h) { return h * s; }

// Normalized two-component state; global phase carries no meaning.
struct QubitState {
  Complex amp0{1.0, 0.0};
  Complex amp1{0.0, 0.0};

  double norm_sq() const { return std::norm(amp0) + std::norm(amp1); }
  QubitState normalized() const;
};

inline Complex inner(const QubitState& a, const QubitState& b) {
  return std::conj(a.amp0) * b.amp0 + std::conj(a.amp1) * b.amp1;
}

// |<a|b>|^2, symmetric and global-phase invariant.
double fidelity(const QubitState& a, const QubitState& b);

struct Eigensystem {
  double e_plus = 0.0;   // a0 + |a|
  double e_minus = 0.0;  // a0 - |a|
  QubitState v_plus;
  QubitState v_minus;
  bool degenerate = false;  // |a| below threshold; canonical basis returned
};

// Axis norms below this are treated as proportional to the identity.
inline constexpr double kDegeneracyThreshold = 1e-14;

// Closed-form 2x2 eigendecomposition. Never throws: degeneracy is flagged,
// with the canonical basis as eigenvectors.
Eigensystem eig(const PauliHamiltonian& h);

// Applies exp(-i * H * phase_integral) in closed form. For a fixed-axis
// time-dependent H(t) = r(t) * h, pass phase_integral = \int r dt.
QubitState evolve_fixed_axis(const PauliHamiltonian& h, double phase_integral,
                             const QubitState& state);

struct HamStats {
  double mean = 0.0;      // <H>
  double stddev = 0.0;    // sqrt(<H^2> - <H>^2)
  double e_ground = 0.0;  // a0 - |a|
};

HamStats stats(const PauliHamiltonian& h, const QubitState& state);

using HamiltonianSampler = std::function<PauliHamiltonian(double t)>;

inline constexpr double kPropagateDefaultTol = 1e-10;
inline constexpr int kPropagateMaxDepth = 30;

// Time-ordered propagation of a general H(t) by piecewise-midpoint
// exponentials, halving the step until the state change between refinement
// levels drops below tol. Throws NonConvergenceError past max_depth.
QubitState propagate_td(const HamiltonianSampler& sampler, double t0, double t1,
                        const QubitState& state, double tol = kPropagateDefaultTol,
                        int max_depth = kPropagateMaxDepth);

// Equal-weight superposition (v_plus + v_minus)/sqrt(2) of an eigensystem.
QubitState equal_weight_state(const Eigensystem& es);

// c0 * v_plus + sqrt(1 - c0^2) * v_minus for c0 = sqrt(c0_sq).
QubitState superposition_state(const Eigensystem& es, double c0_sq);

}  // namespace qsl
