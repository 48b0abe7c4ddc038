#include "qsl/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "qsl/distinguish.hpp"
#include "qsl/errors.hpp"
#include "qsl/numerics.hpp"

namespace qsl {

using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

[[noreturn]] void fail(const std::string& msg) { throw SpecError("spec error: " + msg); }

double finite_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail("field \"" + field + "\" must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail("field \"" + field + "\" must be finite");
  return v;
}

std::int64_t integer_field(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail("field \"" + field + "\" must be an integer");
  return j.get<std::int64_t>();
}

const json& require(const json& doc, const std::string& field) {
  const auto it = doc.find(field);
  if (it == doc.end()) fail("missing required field \"" + field + "\"");
  return *it;
}

void reject_unknown(const json& doc, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.contains(key)) fail("unknown field \"" + key + "\" in " + where);
  }
}

EnvelopeSpec parse_envelope(const json& doc, double t_max) {
  if (!doc.is_object()) fail("field \"envelope\" must be an object");
  reject_unknown(doc, {"kind", "k", "times", "values"}, "envelope");
  const json& jk = require(doc, "kind");
  if (!jk.is_string()) fail("envelope field \"kind\" must be a string");
  const std::string kind = jk.get<std::string>();
  if (kind == "constant") return EnvelopeSpec::constant(t_max);
  if (kind == "sin") {
    const double k = finite_number(require(doc, "k"), "envelope.k");
    if (k < 0.0) fail("envelope.k must be >= 0");
    return EnvelopeSpec::sinusoid(k, t_max);
  }
  if (kind == "samples") {
    const json& jt = require(doc, "times");
    const json& jv = require(doc, "values");
    if (!jt.is_array() || !jv.is_array()) fail("envelope times/values must be arrays");
    std::vector<double> times, values;
    for (std::size_t i = 0; i < jt.size(); ++i)
      times.push_back(finite_number(jt[i], "envelope.times"));
    for (std::size_t i = 0; i < jv.size(); ++i)
      values.push_back(finite_number(jv[i], "envelope.values"));
    try {
      return EnvelopeSpec::samples(std::move(times), std::move(values), t_max);
    } catch (const std::invalid_argument& e) {
      fail(std::string("envelope: ") + e.what());
    }
  }
  fail("envelope.kind must be one of constant|sin|samples");
}

}  // namespace

const char* ScenarioSpec::type_name() const {
  switch (type) {
    case Type::static_field: return "static";
    case Type::fixed_axis: return "fixed_axis";
    case Type::ac: return "ac";
    case Type::rotating: return "rotating";
    case Type::custom_envelope: return "custom_envelope";
  }
  return "?";
}

ScenarioSpec parse_scenario(const json& doc) {
  if (!doc.is_object()) fail("top-level spec must be a JSON object");
  reject_unknown(doc,
                 {"type", "omega", "k", "epsilon", "target", "envelope", "n", "m", "kind",
                  "t_max", "omega_c", "omega_true", "steps"},
                 "spec");

  ScenarioSpec s;
  const json& jt = require(doc, "type");
  if (!jt.is_string()) fail("field \"type\" must be a string");
  const std::string type = jt.get<std::string>();
  if (type == "static") s.type = ScenarioSpec::Type::static_field;
  else if (type == "fixed_axis") s.type = ScenarioSpec::Type::fixed_axis;
  else if (type == "ac") s.type = ScenarioSpec::Type::ac;
  else if (type == "rotating") s.type = ScenarioSpec::Type::rotating;
  else if (type == "custom_envelope") s.type = ScenarioSpec::Type::custom_envelope;
  else fail("field \"type\" must be one of static|fixed_axis|ac|rotating|custom_envelope");

  s.omega = finite_number(require(doc, "omega"), "omega");
  if (s.omega <= 0.0) fail("field \"omega\" must be positive");

  s.n = integer_field(require(doc, "n"), "n");
  if (s.n < 1) fail("field \"n\" must be >= 1");

  if (doc.contains("m")) {
    const std::int64_t m = integer_field(doc["m"], "m");
    if (m < 1 || m > 4096) fail("field \"m\" must lie in [1, 4096]");
    s.m = static_cast<int>(m);
  }
  if (doc.contains("kind")) {
    const json& jk = doc["kind"];
    if (!jk.is_string()) fail("field \"kind\" must be a string");
    const std::string kind = jk.get<std::string>();
    if (kind == "single") s.kind = ProbeKind::single;
    else if (kind == "product") s.kind = ProbeKind::product;
    else if (kind == "ghz") s.kind = ProbeKind::ghz;
    else fail("field \"kind\" must be one of single|product|ghz");
  }
  if (doc.contains("t_max")) {
    const double t = finite_number(doc["t_max"], "t_max");
    if (t <= 0.0) fail("field \"t_max\" must be positive");
    s.t_max = t;
  }
  if (doc.contains("k")) {
    const double k = finite_number(doc["k"], "k");
    if (k < 0.0) fail("field \"k\" must be >= 0");
    s.k = k;
  }
  if (doc.contains("epsilon")) {
    const double e = finite_number(doc["epsilon"], "epsilon");
    if (e <= 0.0) fail("field \"epsilon\" must be positive");
    s.epsilon = e;
  }
  if (doc.contains("target")) {
    const json& jt2 = doc["target"];
    if (!jt2.is_string()) fail("field \"target\" must be a string");
    const std::string target = jt2.get<std::string>();
    if (target == "omega") s.target = RotatingTarget::omega;
    else if (target == "k") s.target = RotatingTarget::k;
    else fail("field \"target\" must be \"omega\" or \"k\"");
  }
  if (doc.contains("omega_c")) s.omega_c = finite_number(doc["omega_c"], "omega_c");
  if (doc.contains("omega_true")) s.omega_true = finite_number(doc["omega_true"], "omega_true");
  if (doc.contains("steps")) {
    const std::int64_t st = integer_field(doc["steps"], "steps");
    if (st < 1 || st > 10000000) fail("field \"steps\" must lie in [1, 1e7]");
    s.steps = static_cast<int>(st);
  }

  switch (s.type) {
    case ScenarioSpec::Type::ac:
      if (!s.k) fail("missing required field \"k\" for an ac scenario");
      break;
    case ScenarioSpec::Type::rotating:
      if (!s.epsilon) fail("missing required field \"epsilon\" for a rotating scenario");
      break;
    case ScenarioSpec::Type::fixed_axis:
    case ScenarioSpec::Type::custom_envelope: {
      if (!doc.contains("envelope"))
        fail("missing required field \"envelope\" for this scenario type");
      if (!s.t_max) fail("missing required field \"t_max\" for an envelope scenario");
      s.envelope = parse_envelope(doc["envelope"], *s.t_max);
      const bool sampled = s.envelope->kind() == EnvelopeSpec::Kind::samples;
      if (s.type == ScenarioSpec::Type::custom_envelope && !sampled)
        fail("custom_envelope requires envelope.kind = samples");
      if (s.type == ScenarioSpec::Type::fixed_axis && sampled)
        fail("fixed_axis takes a constant or sin envelope; use custom_envelope for samples");
      break;
    }
    case ScenarioSpec::Type::static_field:
      break;
  }
  return s;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open spec file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

namespace {

// Effective amplitudes entering the two bounds for an m-body probe: the
// variance gains sqrt(m) (product) or m (GHZ); the mean above ground gains
// m for both.
double omega_eff_mt(const ScenarioSpec& s) { return effective_omega(s.omega, s.m, s.kind); }

double omega_eff_ml(const ScenarioSpec& s) {
  return s.kind == ProbeKind::single ? s.omega : s.omega * static_cast<double>(s.m);
}

}  // namespace

BoundOutput compute_bound(const ScenarioSpec& spec) {
  const double f0 = critical_fidelity({spec.n});
  const DistanceFunctions d = distances(f0);
  BoundOutput out;

  switch (spec.type) {
    case ScenarioSpec::Type::static_field: {
      const double tau_mt = mt_static(omega_eff_mt(spec) / 2.0, f0);
      const double tau_ml = pi * d.alpha / omega_eff_ml(spec);
      out.result = make_bound_result(tau_mt, tau_ml, d);
      break;
    }
    case ScenarioSpec::Type::ac: {
      AcScenario ac{spec.omega, *spec.k, spec.n, spec.m, spec.kind};
      out.k_max = ac_kmax(ac);
      const std::optional<double> tau_mt = ac_tmin(ac);
      std::optional<double> tau_ml;
      const double w_ml = omega_eff_ml(spec);
      if (*spec.k == 0.0) {
        tau_ml = pi * d.alpha / w_ml;
      } else {
        const double c = 1.0 - *spec.k * pi * d.alpha / w_ml;
        if (c >= -1.0) tau_ml = std::acos(c) / *spec.k;
      }
      out.result = make_bound_result(tau_mt, tau_ml, d);
      break;
    }
    case ScenarioSpec::Type::fixed_axis:
    case ScenarioSpec::Type::custom_envelope: {
      const EnvelopeSpec& env = *spec.envelope;
      out.result = make_bound_result(mt_envelope(omega_eff_mt(spec) / 2.0, env, f0),
                                     ml_envelope(0.0, omega_eff_ml(spec), env, f0), d);
      break;
    }
    case ScenarioSpec::Type::rotating: {
      const RotatingTimes t = rotating_tmin({spec.omega, *spec.epsilon, spec.target, spec.n});
      out.result = make_bound_result(t.tau_mt, t.tau_ml, d);
      break;
    }
  }
  return out;
}

json bound_to_json(const ScenarioSpec& spec, const BoundOutput& out) {
  const auto opt = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  json metadata{
      {"alpha_is_beta_squared", true},
      {"constants",
       {{"hbar_js", kHbarJs}, {"mu_b_j_per_t", kBohrMagnetonJPerT}}},
  };
  if (spec.kind == ProbeKind::product && spec.m > 1)
    metadata["product_speedup_extrapolated"] = true;

  json doc{
      {"type", spec.type_name()},
      {"f0", out.result.distances.f},
      {"alpha", out.result.distances.alpha},
      {"beta", out.result.distances.beta},
      {"tau_mt", opt(out.result.tau_mt)},
      {"tau_ml", opt(out.result.tau_ml)},
      {"t_min", opt(out.result.t_min)},
      {"feasible", out.result.feasible},
      {"metadata", metadata},
  };
  if (out.k_max) doc["k_max"] = *out.k_max;
  if (spec.type == ScenarioSpec::Type::rotating)
    doc["target"] = spec.target == RotatingTarget::omega ? "omega" : "k";
  return doc;
}

std::function<double(double)> scenario_fidelity(const ScenarioSpec& spec) {
  // GHZ probes accumulate phase m times faster; product probes multiply
  // per-site fidelities.
  const double w = spec.kind == ProbeKind::ghz ? spec.omega * static_cast<double>(spec.m)
                                               : spec.omega;
  const double site_power =
      spec.kind == ProbeKind::product ? static_cast<double>(spec.m) : 1.0;
  const auto raise = [site_power](double f_single) {
    return site_power == 1.0 ? f_single : std::pow(f_single, site_power);
  };

  switch (spec.type) {
    case ScenarioSpec::Type::static_field:
      return [w, raise](double t) {
        const double c = std::cos(w / 2.0 * t);
        return raise(c * c);
      };
    case ScenarioSpec::Type::ac:
      return ac_fidelity({spec.omega, *spec.k, spec.n, spec.m, spec.kind});
    case ScenarioSpec::Type::fixed_axis:
    case ScenarioSpec::Type::custom_envelope: {
      const EnvelopeSpec env = *spec.envelope;
      return [w, raise, env](double t) {
        const double phi = numerics::integrate([&env](double s) { return env(s); }, 0.0, t);
        const double c = std::cos(w / 2.0 * phi);
        return raise(c * c);
      };
    }
    case ScenarioSpec::Type::rotating:
      throw SpecError(
          "spec error: rotating scenarios have no fixed-axis fidelity curve; "
          "use `control simulate`");
  }
  throw SpecError("spec error: unsupported scenario type");
}

}  // namespace qsl
