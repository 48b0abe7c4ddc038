#include "qsl/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsl/bounds.hpp"
#include "qsl/errors.hpp"

namespace qsl {

namespace {
constexpr double pi = std::numbers::pi;
}

PauliHamiltonian ParamHamiltonian::at(double omega, double t) const {
  if (!sampler) throw std::invalid_argument("ParamHamiltonian has no sampler");
  return sampler(omega, t);
}

PauliHamiltonian ParamHamiltonian::d_omega_at(double omega, double t) const {
  if (d_omega_sampler) return d_omega_sampler(omega, t);
  const double h = 1e-6 * std::max(1.0, std::abs(omega));
  const PauliHamiltonian hi = at(omega + h, t);
  const PauliHamiltonian lo = at(omega - h, t);
  const double inv = 1.0 / (2.0 * h);
  return {(hi.a0 - lo.a0) * inv, (hi.ax - lo.ax) * inv, (hi.ay - lo.ay) * inv,
          (hi.az - lo.az) * inv};
}

void fix_gauge(std::vector<QubitState>& branch) {
  if (branch.empty()) return;
  // Canonical phase for the first frame: largest component real positive.
  QubitState& head = branch.front();
  const Complex lead =
      std::abs(head.amp0) >= std::abs(head.amp1) ? head.amp0 : head.amp1;
  if (std::abs(lead) > 0.0) {
    const Complex rot = std::conj(lead) / std::abs(lead);
    head.amp0 *= rot;
    head.amp1 *= rot;
  }
  // Parallel transport: make each consecutive overlap real positive.
  for (std::size_t i = 1; i < branch.size(); ++i) {
    const Complex o = inner(branch[i - 1], branch[i]);
    const double mag = std::abs(o);
    if (mag == 0.0) continue;  // orthogonal jump; nothing to transport
    const Complex rot = std::conj(o) / mag;
    branch[i].amp0 *= rot;
    branch[i].amp1 *= rot;
  }
}

EigenframeTrace eigenframe_track(const ParamHamiltonian& ph, double omega_c,
                                 const std::vector<double>& grid) {
  if (grid.size() < 2) throw std::invalid_argument("eigenframe grid needs >= 2 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("eigenframe grid must be strictly increasing");
  }

  EigenframeTrace trace;
  trace.grid = grid;
  trace.mu_max.reserve(grid.size());
  trace.mu_min.reserve(grid.size());
  trace.frame_max.reserve(grid.size());
  trace.frame_min.reserve(grid.size());

  for (double t : grid) {
    const Eigensystem es = eig(ph.d_omega_at(omega_c, t));
    if (es.e_plus - es.e_minus < kFrameDegeneracyGap)
      throw DegenerateFrameError("eigenframe undefined: generator gap closed at t=" +
                                 std::to_string(t));
    if (!trace.frame_max.empty()) {
      const double keep = std::norm(inner(trace.frame_max.back(), es.v_plus)) +
                          std::norm(inner(trace.frame_min.back(), es.v_minus));
      const double swap = std::norm(inner(trace.frame_max.back(), es.v_minus)) +
                          std::norm(inner(trace.frame_min.back(), es.v_plus));
      if (swap > keep)
        throw DegenerateFrameError("branch crossing between grid points near t=" +
                                   std::to_string(t));
    }
    trace.mu_max.push_back(es.e_plus);
    trace.mu_min.push_back(es.e_minus);
    trace.frame_max.push_back(es.v_plus);
    trace.frame_min.push_back(es.v_minus);
  }

  fix_gauge(trace.frame_max);
  fix_gauge(trace.frame_min);
  return trace;
}

namespace {

struct Mat2 {
  Complex m00, m01, m10, m11;
};

Mat2 outer(const QubitState& ket, const QubitState& bra) {
  return {ket.amp0 * std::conj(bra.amp0), ket.amp0 * std::conj(bra.amp1),
          ket.amp1 * std::conj(bra.amp0), ket.amp1 * std::conj(bra.amp1)};
}

// Hermitian part of M projected onto Pauli coefficients.
PauliHamiltonian hermitian_pauli(const Mat2& m) {
  const Complex h00 = 0.5 * (m.m00 + std::conj(m.m00));
  const Complex h11 = 0.5 * (m.m11 + std::conj(m.m11));
  const Complex h01 = 0.5 * (m.m01 + std::conj(m.m10));
  PauliHamiltonian p;
  p.a0 = 0.5 * (h00.real() + h11.real());
  p.az = 0.5 * (h00.real() - h11.real());
  p.ax = h01.real();
  p.ay = -h01.imag();
  return p;
}

QubitState difference_quotient(const QubitState& a, const QubitState& b, double dt) {
  return {(b.amp0 - a.amp0) / dt, (b.amp1 - a.amp1) / dt};
}

}  // namespace

HamiltonianSampler control_hamiltonian(const ParamHamiltonian& ph,
                                       const EigenframeTrace& trace, double omega_c) {
  const std::size_t n = trace.grid.size();
  if (n < 2) throw std::invalid_argument("trace too short for a control Hamiltonian");

  // Kick term K(t) = i sum_k |d/dt psi_k><psi_k| at each grid point.
  std::vector<PauliHamiltonian> kick(n);
  for (std::size_t i = 0; i < n; ++i) {
    QubitState dmax, dmin;
    if (i == 0) {
      const double dt = trace.grid[1] - trace.grid[0];
      dmax = difference_quotient(trace.frame_max[0], trace.frame_max[1], dt);
      dmin = difference_quotient(trace.frame_min[0], trace.frame_min[1], dt);
    } else if (i == n - 1) {
      const double dt = trace.grid[i] - trace.grid[i - 1];
      dmax = difference_quotient(trace.frame_max[i - 1], trace.frame_max[i], dt);
      dmin = difference_quotient(trace.frame_min[i - 1], trace.frame_min[i], dt);
    } else {
      const double dt = trace.grid[i + 1] - trace.grid[i - 1];
      dmax = difference_quotient(trace.frame_max[i - 1], trace.frame_max[i + 1], dt);
      dmin = difference_quotient(trace.frame_min[i - 1], trace.frame_min[i + 1], dt);
    }
    const Mat2 a = outer(dmax, trace.frame_max[i]);
    const Mat2 b = outer(dmin, trace.frame_min[i]);
    const Complex iu(0.0, 1.0);
    const Mat2 k{iu * (a.m00 + b.m00), iu * (a.m01 + b.m01), iu * (a.m10 + b.m10),
                 iu * (a.m11 + b.m11)};
    kick[i] = hermitian_pauli(k);
  }

  auto grid = trace.grid;
  return [ph, omega_c, grid = std::move(grid),
          kick = std::move(kick)](double t) -> PauliHamiltonian {
    // Linear interpolation of the kick, clamped to the trace window.
    PauliHamiltonian k;
    if (t <= grid.front()) {
      k = kick.front();
    } else if (t >= grid.back()) {
      k = kick.back();
    } else {
      const auto it = std::upper_bound(grid.begin(), grid.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - grid.begin());
      const double w = (t - grid[i - 1]) / (grid[i] - grid[i - 1]);
      k = kick[i - 1] * (1.0 - w) + kick[i] * w;
    }
    return k + (-ph.at(omega_c, t));
  };
}

namespace {

// Piecewise-quadratic cumulative of the linearly interpolated gap
// mu_max - mu_min, anchored at the trace start.
struct GapCumulative {
  const EigenframeTrace& trace;
  std::vector<double> cum;

  explicit GapCumulative(const EigenframeTrace& t) : trace(t) {
    cum.resize(t.grid.size(), 0.0);
    for (std::size_t i = 1; i < t.grid.size(); ++i) {
      const double g0 = t.mu_max[i - 1] - t.mu_min[i - 1];
      const double g1 = t.mu_max[i] - t.mu_min[i];
      cum[i] = cum[i - 1] + 0.5 * (g0 + g1) * (t.grid[i] - t.grid[i - 1]);
    }
  }

  double total() const { return cum.back(); }

  // Leftmost time where the cumulative reaches `target`.
  double solve(double target) const {
    if (target <= 0.0) return trace.grid.front();
    std::size_t i = 1;
    while (i < cum.size() && cum[i] < target) ++i;
    const double t0 = trace.grid[i - 1];
    const double t1 = trace.grid[i];
    const double g0 = trace.mu_max[i - 1] - trace.mu_min[i - 1];
    const double g1 = trace.mu_max[i] - trace.mu_min[i];
    const double slope = (g1 - g0) / (t1 - t0);
    const double need = target - cum[i - 1];
    // 0.5 slope x^2 + g0 x = need on x in [0, t1 - t0].
    double lo = 0.0, hi = t1 - t0;
    while (hi - lo > 1e-13 * std::max(1.0, t1)) {
      const double x = 0.5 * (lo + hi);
      ((0.5 * slope * x + g0) * x >= need ? hi : lo) = x;
    }
    return t0 + 0.5 * (lo + hi);
  }
};

}  // namespace

double gap_integral(const EigenframeTrace& trace) { return GapCumulative(trace).total(); }

ControlledBound controlled_qsl(const EigenframeTrace& trace, double signal_strength,
                               double f0) {
  if (signal_strength <= 0.0)
    throw std::invalid_argument("signal strength must be positive");
  const DistanceFunctions d = distances(f0);
  const GapCumulative cum(trace);

  ControlledBound out;
  out.signal_strength = signal_strength;
  out.f0 = f0;
  // (s/2) C(tau) >= (pi/2) * distance  =>  C(tau) >= pi * distance / s.
  const double target_mt = pi * d.beta / signal_strength;
  const double target_ml = pi * d.alpha / signal_strength;
  if (cum.total() < target_mt)
    throw InfeasibleError("trace window too short to accumulate the variance-bound target");
  out.tau_mt = cum.solve(target_mt);
  out.tau_ml = cum.solve(target_ml);
  if (out.tau_ml > out.tau_mt + 1e-12)
    throw std::logic_error("mean-energy bound exceeded the variance bound");
  return out;
}

std::vector<FidelitySample> simulate_controlled(const ParamHamiltonian& ph, double omega_true,
                                                double omega_c, const EigenframeTrace& trace,
                                                double horizon, int steps, double step_tol) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (horizon <= 0.0) throw std::invalid_argument("horizon must be positive");

  const HamiltonianSampler h_c = control_hamiltonian(ph, trace, omega_c);
  const HamiltonianSampler with_signal = [&ph, omega_true, &h_c](double t) {
    return ph.at(omega_true, t) + h_c(t);
  };
  const HamiltonianSampler reference = [&ph, omega_c, &h_c](double t) {
    return ph.at(omega_c, t) + h_c(t);
  };

  QubitState psi{0.5 * (trace.frame_max.front().amp0 + trace.frame_min.front().amp0),
                 0.5 * (trace.frame_max.front().amp1 + trace.frame_min.front().amp1)};
  psi = psi.normalized();
  QubitState ref = psi;

  const double start = trace.grid.front();
  std::vector<FidelitySample> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back({start, 1.0});
  double t_prev = start;
  for (int j = 1; j <= steps; ++j) {
    const double t_next = start + horizon * static_cast<double>(j) / steps;
    psi = propagate_td(with_signal, t_prev, t_next, psi, step_tol);
    ref = propagate_td(reference, t_prev, t_next, ref, step_tol);
    out.push_back({t_next, fidelity(ref, psi)});
    t_prev = t_next;
  }
  return out;
}

std::optional<double> fidelity_crossing(const std::vector<FidelitySample>& trace, double f0) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace[i].fidelity > f0) continue;
    if (i == 0 || trace[i].fidelity == f0) return trace[i].t;
    const auto& a = trace[i - 1];
    const auto& b = trace[i];
    const double w = (a.fidelity - f0) / (a.fidelity - b.fidelity);
    return a.t + w * (b.t - a.t);
  }
  return std::nullopt;
}

}  // namespace qsl
