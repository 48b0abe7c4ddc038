#include "qsl/distinguish.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsl/errors.hpp"

namespace qsl {

namespace {

void require_budget(const SampleBudget& budget) {
  if (budget.n < 1) throw std::invalid_argument("sample budget must be >= 1");
}

}  // namespace

BinomialEstimate BinomialEstimate::from_counts(std::int64_t successes, std::int64_t trials) {
  if (trials < 1) throw std::invalid_argument("binomial estimate needs trials >= 1");
  if (successes < 0 || successes > trials)
    throw std::invalid_argument("successes outside [0, trials]");
  BinomialEstimate e;
  e.successes = successes;
  e.trials = trials;
  e.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  e.delta_p = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  return e;
}

double critical_fidelity(const SampleBudget& budget) {
  require_budget(budget);
  const double n = static_cast<double>(budget.n);
  return n / (n + 1.0);
}

bool snr_distinguishable(const BinomialEstimate& a, const BinomialEstimate& b) {
  const double signal = std::abs(a.p_hat - b.p_hat);
  const double noise = a.delta_p + b.delta_p;
  if (noise == 0.0) return signal > 0.0;
  return signal >= noise;
}

double detection_probability(double true_fidelity, const SampleBudget& budget) {
  require_budget(budget);
  if (true_fidelity < 0.0 || true_fidelity > 1.0)
    throw std::invalid_argument("fidelity outside [0, 1]");
  const std::int64_t n = budget.n;
  const double q = 1.0 - true_fidelity;  // per-shot miss probability
  if (q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;

  const BinomialEstimate reference = BinomialEstimate::from_counts(n, n);
  const double log_q = std::log(q);
  const double log_p = std::log1p(-q);
  const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);

  double total = 0.0;
  for (std::int64_t m = 0; m <= n; ++m) {
    const BinomialEstimate observed = BinomialEstimate::from_counts(n - m, n);
    if (!snr_distinguishable(reference, observed)) continue;
    const double dm = static_cast<double>(m);
    const double log_pmf = lg_n - std::lgamma(dm + 1.0) -
                           std::lgamma(static_cast<double>(n - m) + 1.0) + dm * log_q +
                           static_cast<double>(n - m) * log_p;
    total += std::exp(log_pmf);
  }
  return std::min(total, 1.0);
}

PhaseBound min_detectable_phase(const SampleBudget& budget, double gen_mean_above_ground,
                                double gen_stddev) {
  require_budget(budget);
  if (gen_mean_above_ground < 0.0)
    throw std::invalid_argument("generator mean above ground must be >= 0");
  if (gen_stddev < 0.0) throw std::invalid_argument("generator stddev must be >= 0");
  if (gen_mean_above_ground == 0.0 && gen_stddev == 0.0)
    throw NoInformationError("state carries no phase information from this generator");

  constexpr double pi = 3.14159265358979323846;
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(budget.n);
  PhaseBound out;
  out.ml_component =
      gen_mean_above_ground > 0.0 ? 2.0 / (pi * n * gen_mean_above_ground) : inf;
  out.mt_component = gen_stddev > 0.0 ? 1.0 / (std::sqrt(n) * gen_stddev) : inf;
  out.bound = std::max(out.ml_component, out.mt_component);
  return out;
}

}  // namespace qsl
