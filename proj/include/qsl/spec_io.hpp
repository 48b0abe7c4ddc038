#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "qsl/bounds.hpp"
#include "qsl/scenarios.hpp"

namespace qsl {

// Validated scenario description, the on-disk input of the CLI. Parsing is
// strict: unknown fields are rejected, every number must be finite, and
// diagnostics name the offending field.
struct ScenarioSpec {
  enum class Type { static_field, fixed_axis, ac, rotating, custom_envelope };

  Type type = Type::static_field;
  double omega = 1.0;
  std::optional<double> k;
  std::optional<double> epsilon;
  RotatingTarget target = RotatingTarget::omega;
  std::optional<EnvelopeSpec> envelope;
  std::int64_t n = 1;
  int m = 1;
  ProbeKind kind = ProbeKind::single;
  std::optional<double> t_max;
  std::optional<double> omega_c;
  std::optional<double> omega_true;
  std::optional<int> steps;

  const char* type_name() const;
};

ScenarioSpec parse_scenario(const nlohmann::json& doc);   // throws SpecError
ScenarioSpec load_scenario(const std::string& path);      // throws SpecError

// Interrogation-time bounds for a scenario, as the JSON document emitted by
// the `bound` command.
struct BoundOutput {
  BoundResult result;
  std::optional<double> k_max;  // ac scenarios only
};

BoundOutput compute_bound(const ScenarioSpec& spec);
nlohmann::json bound_to_json(const ScenarioSpec& spec, const BoundOutput& out);

// Fidelity-versus-time sampler implied by a scenario (equal-weight probe).
std::function<double(double)> scenario_fidelity(const ScenarioSpec& spec);

}  // namespace qsl
