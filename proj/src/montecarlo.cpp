#include "qsl/montecarlo.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "qsl/numerics.hpp"

namespace qsl {

std::int64_t binomial_inverse_cdf(std::int64_t n, double p, double u) {
  if (n < 1) throw std::invalid_argument("binomial draw needs n >= 1");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability outside [0, 1]");
  if (p == 0.0) return 0;
  if (p == 1.0) return n;

  // Walk the CDF with the stable pmf recurrence from a log-space anchor.
  const double log_pmf0 = static_cast<double>(n) * std::log1p(-p);
  const double ratio = p / (1.0 - p);
  double pmf = std::exp(log_pmf0);
  double cdf = pmf;
  std::int64_t m = 0;
  while (cdf <= u && m < n) {
    pmf *= ratio * static_cast<double>(n - m) / static_cast<double>(m + 1);
    cdf += pmf;
    ++m;
  }
  return m;
}

namespace {

std::uint64_t replicate_key(std::uint64_t seed, std::uint64_t index) {
  return numerics::splitmix64(numerics::splitmix64(seed) ^ index);
}

}  // namespace

double run_experiment(const McConfig& cfg) {
  if (cfg.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  if (cfg.n < 1) throw std::invalid_argument("budget must be >= 1");
  if (cfg.true_fidelity < 0.0 || cfg.true_fidelity > 1.0)
    throw std::invalid_argument("fidelity outside [0, 1]");

  const double q = 1.0 - cfg.true_fidelity;
  const BinomialEstimate reference = BinomialEstimate::from_counts(cfg.n, cfg.n);
  std::int64_t detected = 0;
  for (std::int64_t r = 0; r < cfg.replicates; ++r) {
    const double u =
        numerics::uniform01(numerics::splitmix64(replicate_key(cfg.seed, static_cast<std::uint64_t>(r))));
    const std::int64_t misses = binomial_inverse_cdf(cfg.n, q, u);
    const BinomialEstimate observed = BinomialEstimate::from_counts(cfg.n - misses, cfg.n);
    if (snr_distinguishable(reference, observed)) ++detected;
  }
  return static_cast<double>(detected) / static_cast<double>(cfg.replicates);
}

SweepResult sweep_time(const std::function<double(double)>& fidelity_of_t,
                       const std::vector<double>& t_grid, std::int64_t n,
                       std::int64_t replicates, std::uint64_t seed) {
  const double threshold_rate = detection_probability(critical_fidelity({n}), {n});
  SweepResult out;
  out.rows.reserve(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const double f = fidelity_of_t(t);
    McConfig cfg;
    cfg.true_fidelity = f;
    cfg.n = n;
    cfg.replicates = replicates;
    cfg.seed = replicate_key(seed, 0x5157454550ULL + i);  // per-point stream
    SweepRow row;
    row.t = t;
    row.detection_rate = run_experiment(cfg);
    row.exact_rate = detection_probability(f, {n});
    // Tolerance absorbs roundoff when the grid lands exactly on the
    // critical fidelity.
    if (!out.threshold_time && row.exact_rate >= threshold_rate - 1e-12)
      out.threshold_time = t;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace qsl
