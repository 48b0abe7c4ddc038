#include "qsl/manybody.hpp"

#include <cmath>

#include <doctest.h>

#include "qsl/errors.hpp"
#include "qsl/numerics.hpp"

using namespace qsl;

namespace {

const PauliHamiltonian kHz{0.0, 0.0, 0.0, 0.5};
const QubitState kPlus{std::sqrt(0.5), std::sqrt(0.5)};

struct TestRng {
  std::uint64_t state;
  explicit TestRng(std::uint64_t seed) : state(seed) {}
  double uniform(double lo, double hi) {
    state = numerics::splitmix64(state);
    return lo + (hi - lo) * numerics::uniform01(state);
  }
};

}  // namespace

TEST_CASE("tensor_stats: four-body product and GHZ probes") {
  const ManyBodyStats pro = tensor_stats(kHz, kPlus, 4, ProbeKind::product);
  CHECK(pro.stddev_total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pro.mean_total == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(pro.e_ground_total == doctest::Approx(-2.0).epsilon(1e-12));

  const ManyBodyStats ghz = tensor_stats(kHz, kPlus, 4, ProbeKind::ghz);
  CHECK(ghz.stddev_total == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ghz.mean_total == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("tensor_stats: one body reproduces the single-qubit statistics") {
  const HamStats single = stats(kHz, kPlus);
  const ManyBodyStats one = tensor_stats(kHz, kPlus, 1, ProbeKind::product);
  CHECK(one.mean_total == doctest::Approx(single.mean).epsilon(1e-15));
  CHECK(one.stddev_total == doctest::Approx(single.stddev).epsilon(1e-15));
  CHECK(one.e_ground_total == doctest::Approx(single.e_ground).epsilon(1e-15));
}

TEST_CASE("tensor_stats: dimension cap") {
  CHECK_THROWS_AS(tensor_stats(kHz, kPlus, 13, ProbeKind::product), DimensionError);
  CHECK_THROWS_AS(tensor_stats(kHz, kPlus, 0, ProbeKind::product), std::invalid_argument);
  CHECK_NOTHROW(tensor_stats(kHz, kPlus, 12, ProbeKind::ghz));
}

TEST_CASE("verify_scaling: diagonal signal, m = 2..6") {
  const ScalingReport report = verify_scaling(kHz, kPlus, {2, 3, 4, 5, 6});
  CHECK(report.all_within(1e-10));
  REQUIRE(report.rows.size() == 5);
  CHECK(report.rows.front().speedup_mt_product == doctest::Approx(std::sqrt(2.0)));
  CHECK(report.rows.front().speedup_mt_ghz == doctest::Approx(2.0));
  CHECK(report.rows.front().speedup_ml == doctest::Approx(2.0));
}

TEST_CASE("verify_scaling: random axes and probe states") {
  TestRng rng(0x6eed001);
  for (int trial = 0; trial < 25; ++trial) {
    const PauliHamiltonian h{rng.uniform(-0.5, 0.5), rng.uniform(-1.0, 1.0),
                             rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (h.axis_norm() < 1e-3) continue;
    const QubitState psi =
        QubitState{Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)),
                   Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))}
            .normalized();
    const ScalingReport report = verify_scaling(h, psi, {2, 4, 6});
    CHECK(report.all_within(1e-10));
  }
}

TEST_CASE("verify_scaling: eigenstate probe has zero spread at every m") {
  const QubitState eigen{1.0, 0.0};  // +z eigenstate of kHz
  for (int m : {2, 3, 5}) {
    const ManyBodyStats pro = tensor_stats(kHz, eigen, m, ProbeKind::product);
    CHECK(pro.stddev_total == doctest::Approx(0.0).epsilon(1e-12));
  }
  const ScalingReport report = verify_scaling(kHz, eigen, {2, 3, 5});
  CHECK(report.all_within(1e-10));
}
