#include "qsl/distinguish.hpp"

#include <cmath>
#include <vector>

#include <doctest.h>

#include "qsl/errors.hpp"

using namespace qsl;

TEST_CASE("critical_fidelity: closed form and monotonicity") {
  CHECK(critical_fidelity({1}) == 0.5);
  CHECK(critical_fidelity({3}) == 0.75);
  CHECK(critical_fidelity({100}) == 100.0 / 101.0);
  double prev = 0.0;
  for (std::int64_t n : {1, 2, 5, 17, 100, 5000}) {
    const double f0 = critical_fidelity({n});
    CHECK(f0 > prev);
    prev = f0;
  }
  CHECK_THROWS_AS(critical_fidelity({0}), std::invalid_argument);
}

TEST_CASE("critical_fidelity saturates the SNR condition with equality") {
  // |1 - F0| = sqrt(F0 (1 - F0) / n) holds exactly at F0 = n/(n+1).
  for (std::int64_t n : {1, 3, 100, 12345}) {
    const double f0 = critical_fidelity({n});
    const double lhs = std::abs(1.0 - f0);
    const double rhs = std::sqrt(f0 * (1.0 - f0) / static_cast<double>(n));
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("snr_distinguishable: plug-in criterion with degenerate ties") {
  const auto a = BinomialEstimate::from_counts(100, 100);
  const auto b = BinomialEstimate::from_counts(99, 100);
  CHECK(snr_distinguishable(a, b));  // 0.01 >= 0.00995
  CHECK(snr_distinguishable(b, a));

  CHECK_FALSE(snr_distinguishable(b, b));  // zero signal, nonzero noise
  CHECK_FALSE(snr_distinguishable(a, a));  // zero signal, zero noise: tie

  const auto c = BinomialEstimate::from_counts(0, 100);
  CHECK(snr_distinguishable(a, c));  // orthogonal outcomes, no noise

  CHECK_THROWS_AS(BinomialEstimate::from_counts(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(BinomialEstimate::from_counts(7, 5), std::invalid_argument);
}

TEST_CASE("detection_probability: endpoint and enumeration values") {
  CHECK(detection_probability(1.0, {5}) == 0.0);
  CHECK(detection_probability(0.0, {1}) == 1.0);
  // Enumeration agrees with the m >= 1 reduction: P = 1 - F^n.
  CHECK(detection_probability(100.0 / 101.0, {100}) ==
        doctest::Approx(0.6302887876708807).epsilon(1e-12));
  CHECK(detection_probability(0.5, {1}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(detection_probability(1.5, {5}), std::invalid_argument);
}

TEST_CASE("detection_probability: monotone in fidelity and budget") {
  const std::vector<std::int64_t> budgets{1, 2, 5, 10, 100};
  for (std::int64_t n : budgets) {
    double prev = 1.1;
    for (int i = 0; i <= 20; ++i) {
      const double f = static_cast<double>(i) / 20.0;
      const double p = detection_probability(f, {n});
      CHECK(p <= prev + 1e-12);
      prev = p;
    }
  }
  for (const double f : {0.2, 0.5, 0.9}) {
    double prev = -1.0;
    for (std::int64_t n : budgets) {
      const double p = detection_probability(f, {n});
      CHECK(p >= prev - 1e-12);
      prev = p;
    }
  }
}

TEST_CASE("detection_probability at the critical fidelity approaches 1 - 1/e") {
  const double limit = 1.0 - std::exp(-1.0);
  double prev = 0.0;
  for (std::int64_t n : {100, 1000, 10000}) {
    const double p = detection_probability(critical_fidelity({n}), {n});
    CHECK(p > prev);  // approaches the limit from below
    CHECK(p < limit);
    prev = p;
  }
  CHECK(std::abs(prev - 0.6321) < 0.02);
}

TEST_CASE("plug-in criterion reduces to m >= 1 for every outcome") {
  std::vector<std::int64_t> budgets;
  for (std::int64_t n = 1; n <= 128; ++n) budgets.push_back(n);
  budgets.push_back(1000);
  budgets.push_back(10000);
  for (std::int64_t n : budgets) {
    const auto reference = BinomialEstimate::from_counts(n, n);
    for (std::int64_t m = 0; m <= n; ++m) {
      const auto observed = BinomialEstimate::from_counts(n - m, n);
      CHECK(snr_distinguishable(reference, observed) == (m >= 1));
    }
  }
}

TEST_CASE("min_detectable_phase: components and scaling") {
  const PhaseBound b = min_detectable_phase({100}, 0.5, 0.5);
  CHECK(b.ml_component == doctest::Approx(0.012732395447351627).epsilon(1e-12));
  CHECK(b.mt_component == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(b.bound == doctest::Approx(0.2).epsilon(1e-12));

  // Quadrupling the budget halves the variance-limited component.
  const PhaseBound b4 = min_detectable_phase({400}, 0.5, 0.5);
  CHECK(b4.mt_component == doctest::Approx(b.mt_component / 2.0).epsilon(1e-12));

  CHECK_THROWS_AS(min_detectable_phase({10}, 0.0, 0.0), NoInformationError);
  const PhaseBound eigen = min_detectable_phase({10}, 0.5, 0.0);
  CHECK(std::isinf(eigen.mt_component));
  CHECK(std::isinf(eigen.bound));
}
