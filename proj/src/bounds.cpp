#include "qsl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "qsl/errors.hpp"
#include "qsl/numerics.hpp"

namespace qsl {

namespace {
constexpr double pi = std::numbers::pi;
}

double acos_sqrt(double f) {
  if (f < 0.0 || f > 1.0) throw std::invalid_argument("fidelity outside [0, 1]");
  return std::atan2(std::sqrt(1.0 - f), std::sqrt(f));
}

double acos_sqrt_f0_large_n(double n) {
  if (n < 1.0) throw std::invalid_argument("budget must be >= 1");
  return 1.0 / std::sqrt(n);
}

DistanceFunctions distances(double f0) {
  DistanceFunctions d;
  d.f = f0;
  d.beta = 2.0 / pi * acos_sqrt(f0);
  d.alpha = d.beta * d.beta;
  return d;
}

EnvelopeSpec EnvelopeSpec::constant(double t_max) {
  if (t_max <= 0.0) throw std::invalid_argument("envelope horizon must be positive");
  return EnvelopeSpec(Kind::constant, t_max);
}

EnvelopeSpec EnvelopeSpec::sinusoid(double k, double t_max) {
  if (t_max <= 0.0) throw std::invalid_argument("envelope horizon must be positive");
  if (k < 0.0) throw std::invalid_argument("sinusoid frequency must be >= 0");
  EnvelopeSpec e(Kind::sinusoid, t_max);
  e.k_ = k;
  return e;
}

EnvelopeSpec EnvelopeSpec::samples(std::vector<double> times, std::vector<double> values,
                                   double t_max) {
  if (t_max <= 0.0) throw std::invalid_argument("envelope horizon must be positive");
  if (times.size() < 2 || times.size() != values.size())
    throw std::invalid_argument("sample envelope needs >= 2 matched (time, value) pairs");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("sample times must be strictly increasing");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("sample values must be finite");
  }
  EnvelopeSpec e(Kind::samples, t_max);
  e.times_ = std::move(times);
  e.values_ = std::move(values);
  return e;
}

double EnvelopeSpec::operator()(double t) const {
  switch (kind_) {
    case Kind::constant:
      return 1.0;
    case Kind::sinusoid:
      return std::sin(k_ * t);
    case Kind::samples: {
      if (t <= times_.front()) return values_.front();
      if (t >= times_.back()) return values_.back();
      const auto it = std::upper_bound(times_.begin(), times_.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - times_.begin());
      const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
      return values_[i - 1] + w * (values_[i] - values_[i - 1]);
    }
  }
  return 0.0;
}

double EnvelopeSpec::scan_dt() const {
  switch (kind_) {
    case Kind::constant:
      return t_max_ / 256.0;
    case Kind::sinusoid:
      return k_ > 0.0 ? std::min(t_max_ / 256.0, pi / (16.0 * k_)) : t_max_ / 256.0;
    case Kind::samples: {
      double dt = t_max_ / 256.0;
      for (std::size_t i = 1; i < times_.size(); ++i)
        dt = std::min(dt, (times_[i] - times_[i - 1]) / 4.0);
      return dt;
    }
  }
  return t_max_ / 256.0;
}

double EnvelopeSpec::max_abs() const {
  if (kind_ != Kind::samples) return 1.0;
  double peak = 0.0;
  for (double v : values_) peak = std::max(peak, std::abs(v));
  return peak;
}

BoundResult make_bound_result(std::optional<double> tau_mt, std::optional<double> tau_ml,
                              const DistanceFunctions& d) {
  BoundResult r;
  r.tau_mt = tau_mt;
  r.tau_ml = tau_ml;
  r.distances = d;
  r.feasible = tau_mt.has_value() && tau_ml.has_value();
  if (r.feasible) r.t_min = std::max(*tau_mt, *tau_ml);
  return r;
}

double mt_static(double stddev_h, double f0) {
  if (stddev_h < 0.0) throw std::invalid_argument("stddev must be >= 0");
  const double beta = distances(f0).beta;
  if (beta == 0.0) return 0.0;
  if (stddev_h == 0.0)
    throw NoInformationError("zero energy spread: the state never moves");
  return pi / (2.0 * stddev_h) * beta;
}

double ml_static(double mean_h, double e_ground, double e_reference, double f0) {
  if (e_reference > e_ground)
    throw InvalidReferenceError("reference level above the ground energy");
  const double alpha = distances(f0).alpha;
  if (alpha == 0.0) return 0.0;
  const double gap = mean_h - e_reference;
  if (gap == 0.0)
    throw NoInformationError("mean energy at the reference level: the state never moves");
  return pi / (2.0 * gap) * alpha;
}

namespace {

// Shared monotone-crossing solve for the envelope bounds. `integrand` must
// be nonnegative.
std::optional<double> envelope_crossing(const std::function<double(double)>& integrand,
                                        double target, double horizon) {
  if (target <= 0.0) return 0.0;
  const double total = numerics::integrate(integrand, 0.0, horizon);
  if (total == 0.0)
    throw NoInformationError("integrand identically zero over the horizon");
  if (total < target) return std::nullopt;
  return numerics::crossing_time(integrand, target, horizon);
}

}  // namespace

std::optional<double> mt_envelope(double stddev_h_unit, const EnvelopeSpec& env, double f0) {
  if (stddev_h_unit < 0.0) throw std::invalid_argument("stddev must be >= 0");
  const double target = pi / 2.0 * distances(f0).beta;
  if (target <= 0.0) return 0.0;
  if (stddev_h_unit == 0.0)
    throw NoInformationError("zero energy spread: the state never moves");
  const auto integrand = [&](double s) { return stddev_h_unit * std::abs(env(s)); };
  return envelope_crossing(integrand, target, env.horizon());
}

std::optional<double> ml_envelope(double mean_h_unit, double omega, const EnvelopeSpec& env,
                                  double f0) {
  if (omega <= 0.0) throw std::invalid_argument("omega must be positive");
  if (std::abs(mean_h_unit) > omega / 2.0 + 1e-12)
    throw std::invalid_argument("mean of the unit-envelope Hamiltonian outside its spectrum");
  const double target = pi / 2.0 * distances(f0).alpha;
  if (target <= 0.0) return 0.0;
  const auto integrand = [&](double s) {
    const double r = env(s);
    // <h> r(t) - E_g(t) with E_g(t) = -(omega/2) |r(t)|; >= 0 always.
    return std::max(0.0, mean_h_unit * r + omega / 2.0 * std::abs(r));
  };
  return envelope_crossing(integrand, target, env.horizon());
}

std::optional<double> actual_crossing_time(double omega, double c0_sq,
                                           const EnvelopeSpec& env, double f0) {
  if (omega <= 0.0) throw std::invalid_argument("omega must be positive");
  if (c0_sq < 0.0 || c0_sq > 1.0) throw std::invalid_argument("c0_sq outside [0, 1]");
  if (f0 < 0.0 || f0 > 1.0) throw std::invalid_argument("fidelity outside [0, 1]");

  const double visibility = 4.0 * c0_sq * (1.0 - c0_sq);
  const double floor = (1.0 - 2.0 * c0_sq) * (1.0 - 2.0 * c0_sq);  // min of F(t)
  if (floor > f0) return std::nullopt;
  if (f0 >= 1.0) return 0.0;

  // F(t) <= f0  <=>  |sin(theta(t))| >= sin(theta*) with theta = (omega/2) Phi.
  const double theta_star = std::asin(std::min(1.0, std::sqrt((1.0 - f0) / visibility)));
  if (theta_star == 0.0) return 0.0;

  // theta is not monotone in general; march the accumulated phase on a grid
  // fine enough to resolve both the envelope and the phase rate, then bisect
  // |theta| - theta* inside the first bracketing interval.
  const double rate = omega / 2.0 * std::max(env.max_abs(), 1e-30);
  const double dt = std::min(env.scan_dt(), 0.025 / rate);
  const auto r = [&](double s) { return env(s); };
  double t_prev = 0.0;
  double phi_prev = 0.0;  // \int_0^t r
  const auto theta_of = [&](double phi) { return std::abs(omega / 2.0 * phi); };
  while (t_prev < env.horizon()) {
    const double t_next = std::min(t_prev + dt, env.horizon());
    const double phi_next = phi_prev + numerics::integrate(r, t_prev, t_next, 1e-14);
    if (theta_of(phi_next) >= theta_star) {
      const auto gap = [&](double t) {
        const double phi = phi_prev + numerics::integrate(r, t_prev, t, 1e-14);
        return theta_of(phi) - theta_star;
      };
      return numerics::bisect(gap, t_prev, t_next, 1e-12);
    }
    t_prev = t_next;
    phi_prev = phi_next;
  }
  return std::nullopt;
}

double scale_many_body(double tau, int m, ProbeKind kind, BoundKind which) {
  if (m < 1) throw std::invalid_argument("body count must be >= 1");
  if (kind == ProbeKind::single) return tau;
  const double dm = static_cast<double>(m);
  if (which == BoundKind::ml) return tau / dm;
  return kind == ProbeKind::product ? tau / std::sqrt(dm) : tau / dm;
}

double mlb_vs_mtb_crossover(double omega, double f0) {
  if (omega <= 0.0) throw std::invalid_argument("omega must be positive");
  if (f0 <= 0.0 || f0 >= 1.0) throw std::invalid_argument("f0 must lie in (0, 1)");
  const double beta = distances(f0).beta;
  return beta * beta / (1.0 + beta * beta);
}

}  // namespace qsl
