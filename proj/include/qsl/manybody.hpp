#pragma once

#include <vector>

#include "qsl/bounds.hpp"
#include "qsl/pauli.hpp"

namespace qsl {

inline constexpr int kMaxBodies = 12;  // 2^12 = 4096 basis states

// Exact tensor statistics of H_total = sum_i H_i on an M-body probe.
struct ManyBodyStats {
  int m = 1;
  double mean_total = 0.0;
  double stddev_total = 0.0;
  double e_ground_total = 0.0;
  ProbeKind kind = ProbeKind::product;
};

// Brute-force enumeration over all 2^m eigenbasis configurations. For
// product probes, single_state is decomposed in the eigenbasis of h_single
// and replicated per site; for GHZ probes the state is the equal-weight
// superposition of the all-plus and all-minus configurations of that same
// eigenbasis (the scaling laws hold in the signal eigenbasis), and
// single_state is ignored. Throws DimensionError for m > 12.
ManyBodyStats tensor_stats(const PauliHamiltonian& h_single, const QubitState& single_state,
                           int m, ProbeKind kind);

// One row of the scaling verification: brute-force values against the
// closed-form predictions sqrt(M) dH (product), M dH (GHZ, equal-weight
// single-site reference), and M <h - e_g> for the mean above ground.
struct ScalingRow {
  int m = 1;
  double stddev_product = 0.0;
  double stddev_product_predicted = 0.0;
  double stddev_ghz = 0.0;
  double stddev_ghz_predicted = 0.0;
  double mean_above_ground_product = 0.0;
  double mean_above_ground_ghz = 0.0;
  double mean_above_ground_predicted = 0.0;
  double max_rel_error = 0.0;
  // Implied speedups of the time bounds relative to one body.
  double speedup_mt_product = 1.0;  // sqrt(m)
  double speedup_mt_ghz = 1.0;      // m
  double speedup_ml = 1.0;          // m, both probe kinds
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double max_rel_error = 0.0;
  bool all_within(double tol) const { return max_rel_error <= tol; }
};

ScalingReport verify_scaling(const PauliHamiltonian& h_single, const QubitState& single_state,
                             const std::vector<int>& m_range);

}  // namespace qsl
