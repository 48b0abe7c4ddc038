#include "qsl/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsl/distinguish.hpp"
#include "qsl/errors.hpp"

namespace qsl {

namespace {

constexpr double pi = std::numbers::pi;

void require_ac(const AcScenario& s) {
  if (s.omega <= 0.0) throw std::invalid_argument("omega must be positive");
  if (s.k < 0.0) throw std::invalid_argument("k must be >= 0");
  if (s.n < 1) throw std::invalid_argument("budget must be >= 1");
  if (s.m < 1) throw std::invalid_argument("body count must be >= 1");
}

double acos_sqrt_f0(std::int64_t n) {
  // arccos(sqrt(n/(n+1))) = arcsin(sqrt(1/(n+1))): exact at large n where
  // 1 - F0 underflows the direct form.
  return std::asin(std::sqrt(1.0 / (static_cast<double>(n) + 1.0)));
}

}  // namespace

double effective_omega(double omega, int m, ProbeKind kind) {
  switch (kind) {
    case ProbeKind::single:
      return omega;
    case ProbeKind::product:
      return omega * std::sqrt(static_cast<double>(m));
    case ProbeKind::ghz:
      return omega * static_cast<double>(m);
  }
  return omega;
}

double ac_kmax(const AcScenario& s) {
  require_ac(s);
  return effective_omega(s.omega, s.m, s.kind) / acos_sqrt_f0(s.n);
}

std::optional<double> ac_tmin(const AcScenario& s) {
  require_ac(s);
  const double w = effective_omega(s.omega, s.m, s.kind);
  const double a = acos_sqrt_f0(s.n);
  if (s.k == 0.0) return 2.0 * a / w;  // static field of the same amplitude
  const double c = 1.0 - 2.0 * s.k / w * a;
  if (c < -1.0) return std::nullopt;  // k above ac_kmax
  return std::acos(c) / s.k;
}

std::function<double(double)> ac_fidelity(const AcScenario& s) {
  require_ac(s);
  // GHZ probes accumulate phase m times faster; product probes multiply the
  // per-site fidelities instead.
  const double w =
      s.kind == ProbeKind::ghz ? s.omega * static_cast<double>(s.m) : s.omega;
  const double site_power = s.kind == ProbeKind::product ? static_cast<double>(s.m) : 1.0;
  const double k = s.k;
  return [w, k, site_power](double t) {
    const double phase = k == 0.0 ? w / 2.0 * t : w / (2.0 * k) * (1.0 - std::cos(k * t));
    const double c = std::cos(phase);
    return site_power == 1.0 ? c * c : std::pow(c * c, site_power);
  };
}

RotatingTimes rotating_tmin(const RotatingScenario& s) {
  if (s.omega <= 0.0) throw std::invalid_argument("omega must be positive");
  if (s.epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (s.n < 1) throw std::invalid_argument("budget must be >= 1");
  const DistanceFunctions d = distances(critical_fidelity({s.n}));
  RotatingTimes out;
  if (s.target == RotatingTarget::omega) {
    out.tau_mt = pi / s.omega * d.beta;
    out.tau_ml = pi / s.omega * d.alpha;
  } else {
    const double denom = s.epsilon * s.omega * s.omega;
    out.tau_mt = std::sqrt(2.0 * pi * d.beta / denom);
    out.tau_ml = std::sqrt(2.0 * pi * d.alpha / denom);
  }
  out.t_min = out.tau_mt;
  return out;
}

ParamHamiltonian rotating_param_hamiltonian(const RotatingScenario& s) {
  if (s.omega <= 0.0) throw std::invalid_argument("omega must be positive");
  if (s.epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  ParamHamiltonian ph;
  if (s.target == RotatingTarget::omega) {
    const double k = s.epsilon * s.omega;
    ph.sampler = [k](double omega, double t) -> PauliHamiltonian {
      return {0.0, omega / 2.0 * std::cos(k * t), 0.0, omega / 2.0 * std::sin(k * t)};
    };
    ph.d_omega_sampler = [k](double, double t) -> PauliHamiltonian {
      return {0.0, 0.5 * std::cos(k * t), 0.0, 0.5 * std::sin(k * t)};
    };
  } else {
    const double w = s.omega;
    ph.sampler = [w](double k, double t) -> PauliHamiltonian {
      return {0.0, w / 2.0 * std::cos(k * t), 0.0, w / 2.0 * std::sin(k * t)};
    };
    ph.d_omega_sampler = [w](double k, double t) -> PauliHamiltonian {
      return {0.0, -w * t / 2.0 * std::sin(k * t), 0.0, w * t / 2.0 * std::cos(k * t)};
    };
  }
  return ph;
}

double biomagnetic_threshold(double frequency_hz, std::int64_t n, int m, ProbeKind kind) {
  if (frequency_hz < 0.0) throw std::invalid_argument("frequency must be >= 0");
  if (n < 1) throw std::invalid_argument("budget must be >= 1");
  if (m < 1) throw std::invalid_argument("body count must be >= 1");
  if (frequency_hz == 0.0) return 0.0;  // static field: no frequency constraint
  const double k = 2.0 * pi * frequency_hz;
  const double m_eff = effective_omega(1.0, m, kind);
  return kHbarJs * k * acos_sqrt_f0(n) / (2.0 * kBohrMagnetonJPerT * m_eff);
}

std::vector<Fig1Row> fig1_dataset(double omega, std::int64_t n,
                                  const std::vector<double>& c0_grid, int m, ProbeKind kind) {
  if (omega <= 0.0) throw std::invalid_argument("omega must be positive");
  if (n < 1) throw std::invalid_argument("budget must be >= 1");
  for (double c : c0_grid) {
    if (!(c > 0.0 && c < 1.0))
      throw std::invalid_argument("c0_sq grid must lie strictly inside (0, 1)");
  }

  const double f0 = critical_fidelity({n});
  const double e_ground = -omega / 2.0;

  // Actual-crossing transformation per probe kind: GHZ accumulates phase m
  // times faster; a product probe must drive the per-site fidelity down to
  // F0^(1/m).
  const double omega_actual =
      kind == ProbeKind::ghz ? omega * static_cast<double>(m) : omega;
  const double f0_site =
      kind == ProbeKind::product ? std::pow(f0, 1.0 / static_cast<double>(m)) : f0;
  const EnvelopeSpec env = EnvelopeSpec::constant(4.0 * pi / omega_actual);

  std::vector<Fig1Row> rows;
  rows.reserve(c0_grid.size());
  for (double c : c0_grid) {
    Fig1Row row;
    row.c0_sq = c;
    const double stddev = omega * std::sqrt(c * (1.0 - c));
    const double mean = omega * (c - 0.5);
    row.tau_mt = scale_many_body(mt_static(stddev, f0), m, kind, BoundKind::mt);
    row.tau_ml =
        scale_many_body(ml_static(mean, e_ground, e_ground, f0), m, kind, BoundKind::ml);
    row.t_actual = actual_crossing_time(omega_actual, c, env, f0_site);
    row.feasible = row.t_actual.has_value();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qsl
