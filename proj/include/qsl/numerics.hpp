#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>

namespace qsl::numerics {

inline constexpr double kQuadratureAbsTol = 1e-12;
inline constexpr double kCrossingTimeTol = 1e-12;  // contract asks 1e-9; resolve tighter
inline constexpr int kQuadratureMaxDepth = 48;

namespace detail {

template <class F>
double simpson_recurse(const F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol) {
    return left + right + err / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
template <class F>
double integrate(const F& f, double a, double b, double tol = kQuadratureAbsTol,
                 int max_depth = kQuadratureMaxDepth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Leftmost t in [0, horizon] where the nondecreasing cumulative integral
// C(t) = \int_0^t g reaches `target`. Brackets by geometric expansion, then
// bisects the predicate C(t) >= target, so an equality plateau resolves to
// its left edge. nullopt when C(horizon) < target.
template <class F>
std::optional<double> crossing_time(const F& g, double target, double horizon,
                                    double time_tol = kCrossingTimeTol,
                                    double quad_tol = kQuadratureAbsTol) {
  if (target <= 0.0) return 0.0;
  const auto cumulative = [&](double t) { return integrate(g, 0.0, t, quad_tol); };
  if (cumulative(horizon) < target) return std::nullopt;

  double lo = 0.0;
  double hi = horizon * 0x1p-20;
  while (hi < horizon && cumulative(hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  if (hi > horizon) hi = horizon;

  while (hi - lo > time_tol) {
    const double mid = 0.5 * (lo + hi);
    (cumulative(mid) >= target ? hi : lo) = mid;
  }
  return hi;
}

// Bisection root of a sign-changing continuous function on [lo, hi].
template <class F>
double bisect(const F& f, double lo, double hi, double tol = kCrossingTimeTol) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// SplitMix64: counter-friendly 64-bit mixer used for reproducible,
// platform-independent random streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from a 64-bit word.
inline double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1p-53;
}

}  // namespace qsl::numerics
