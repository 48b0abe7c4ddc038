#include "qsl/manybody.hpp"

#include <cmath>
#include <cstdint>

#include "qsl/errors.hpp"

namespace qsl {

ManyBodyStats tensor_stats(const PauliHamiltonian& h_single, const QubitState& single_state,
                           int m, ProbeKind kind) {
  if (m < 1) throw std::invalid_argument("body count must be >= 1");
  if (m > kMaxBodies) throw DimensionError("tensor dimension above the 2^12 brute-force cap");

  const Eigensystem es = eig(h_single);
  // Site-local probabilities in the eigenbasis for the product probe.
  const double p_plus = std::norm(inner(es.v_plus, single_state));
  const double p_minus = std::norm(inner(es.v_minus, single_state));

  const std::uint32_t dim = 1u << m;
  double mean = 0.0;
  double mean_sq = 0.0;
  double e_min = 0.0;
  bool first = true;
  for (std::uint32_t config = 0; config < dim; ++config) {
    // Energy and weight of the eigenbasis configuration: bit set = minus branch.
    double energy = 0.0;
    double weight = 1.0;
    for (int site = 0; site < m; ++site) {
      const bool minus = (config >> site) & 1u;
      energy += minus ? es.e_minus : es.e_plus;
      if (kind == ProbeKind::product) weight *= minus ? p_minus : p_plus;
    }
    if (kind == ProbeKind::ghz)
      weight = (config == 0 || config == dim - 1) ? 0.5 : 0.0;
    mean += weight * energy;
    mean_sq += weight * energy * energy;
    if (first || energy < e_min) {
      e_min = energy;
      first = false;
    }
  }

  ManyBodyStats out;
  out.m = m;
  out.kind = kind;
  out.mean_total = mean;
  out.stddev_total = std::sqrt(std::max(0.0, mean_sq - mean * mean));
  out.e_ground_total = e_min;
  return out;
}

ScalingReport verify_scaling(const PauliHamiltonian& h_single, const QubitState& single_state,
                             const std::vector<int>& m_range) {
  const HamStats single = stats(h_single, single_state);
  const Eigensystem es = eig(h_single);
  const HamStats ew = stats(h_single, equal_weight_state(es));

  const auto rel = [](double got, double want) {
    const double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
  };

  ScalingReport report;
  for (int m : m_range) {
    const ManyBodyStats pro = tensor_stats(h_single, single_state, m, ProbeKind::product);
    const ManyBodyStats ghz = tensor_stats(h_single, single_state, m, ProbeKind::ghz);
    const double dm = static_cast<double>(m);

    ScalingRow row;
    row.m = m;
    row.stddev_product = pro.stddev_total;
    row.stddev_product_predicted = std::sqrt(dm) * single.stddev;
    row.stddev_ghz = ghz.stddev_total;
    row.stddev_ghz_predicted = dm * ew.stddev;
    row.mean_above_ground_product = pro.mean_total - pro.e_ground_total;
    row.mean_above_ground_ghz = ghz.mean_total - ghz.e_ground_total;
    // Product probes scale the single_state mean; GHZ scales the
    // equal-weight mean. Both share <h - e_g> per site times m.
    const double pro_pred = dm * (single.mean - single.e_ground);
    const double ghz_pred = dm * (ew.mean - ew.e_ground);
    row.mean_above_ground_predicted = pro_pred;

    row.max_rel_error = rel(row.stddev_product, row.stddev_product_predicted);
    row.max_rel_error = std::max(row.max_rel_error, rel(row.stddev_ghz, row.stddev_ghz_predicted));
    row.max_rel_error = std::max(row.max_rel_error, rel(row.mean_above_ground_product, pro_pred));
    row.max_rel_error = std::max(row.max_rel_error, rel(row.mean_above_ground_ghz, ghz_pred));

    row.speedup_mt_product = std::sqrt(dm);
    row.speedup_mt_ghz = dm;
    row.speedup_ml = dm;

    report.max_rel_error = std::max(report.max_rel_error, row.max_rel_error);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace qsl
