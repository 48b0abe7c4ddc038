// qslsense: interrogation-time bounds, constraint curves, and Monte Carlo
// detection experiments for qubit sensing scenarios.
//
// Exit codes: 0 success, 1 usage or spec error, 2 scientifically infeasible
// (the structured result is still emitted).

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsl/bounds.hpp"
#include "qsl/control.hpp"
#include "qsl/distinguish.hpp"
#include "qsl/errors.hpp"
#include "qsl/format.hpp"
#include "qsl/montecarlo.hpp"
#include "qsl/scenarios.hpp"
#include "qsl/spec_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: no platform newline mangling
  if (!out) throw qsl::SpecError("spec error: cannot open output file: " + path);
  return out;
}

qsl::ProbeKind parse_kind(const std::string& kind) {
  if (kind == "single") return qsl::ProbeKind::single;
  if (kind == "product") return qsl::ProbeKind::product;
  if (kind == "ghz") return qsl::ProbeKind::ghz;
  throw qsl::SpecError("spec error: kind must be one of single|product|ghz");
}

int cmd_bound(const std::string& spec_path) {
  const qsl::ScenarioSpec spec = qsl::load_scenario(spec_path);
  const qsl::BoundOutput out = qsl::compute_bound(spec);
  std::cout << qsl::bound_to_json(spec, out).dump(2) << "\n";
  return out.result.feasible ? kExitOk : kExitInfeasible;
}

int cmd_curves_fig1(double omega, std::int64_t n, int grid, int m, const std::string& kind,
                    const std::string& out_path) {
  if (grid < 1) throw qsl::SpecError("spec error: grid must be >= 1");
  std::vector<double> c0;
  c0.reserve(grid);
  for (int i = 1; i <= grid; ++i)
    c0.push_back(static_cast<double>(i) / static_cast<double>(grid + 1));
  const auto rows = qsl::fig1_dataset(omega, n, c0, m, parse_kind(kind));

  auto out = open_output(out_path);
  out << "c0_sq,tau_mt,tau_ml,t_actual,feasible\n";
  for (const auto& r : rows) {
    out << qsl::format_double(r.c0_sq) << ',' << qsl::format_double(r.tau_mt) << ','
        << qsl::format_double(r.tau_ml) << ',' << qsl::format_optional(r.t_actual) << ','
        << (r.feasible ? '1' : '0') << '\n';
  }
  return kExitOk;
}

int cmd_curves_biomag(std::int64_t n, int m, const std::string& kind, double f_start,
                      double f_stop, int f_count, bool log_spacing,
                      const std::string& out_path) {
  if (f_count < 2) throw qsl::SpecError("spec error: frequency count must be >= 2");
  if (f_start < 0.0 || f_stop <= f_start)
    throw qsl::SpecError("spec error: need 0 <= f-start < f-stop");
  if (log_spacing && f_start <= 0.0)
    throw qsl::SpecError("spec error: log spacing needs f-start > 0");
  const qsl::ProbeKind pk = parse_kind(kind);

  auto out = open_output(out_path);
  out << "frequency_hz,b_min_tesla,n,m,kind\n";
  for (int i = 0; i < f_count; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(f_count - 1);
    const double f = log_spacing
                         ? f_start * std::pow(f_stop / f_start, w)
                         : f_start + w * (f_stop - f_start);
    out << qsl::format_double(f) << ','
        << qsl::format_double(qsl::biomagnetic_threshold(f, n, m, pk)) << ',' << n << ','
        << m << ',' << kind << '\n';
  }
  return kExitOk;
}

int cmd_mc(const std::string& spec_path, std::int64_t reps, std::uint64_t seed, int points,
           const std::string& out_path) {
  if (reps < 1) throw qsl::SpecError("spec error: reps must be >= 1");
  if (points < 2) throw qsl::SpecError("spec error: points must be >= 2");
  const qsl::ScenarioSpec spec = qsl::load_scenario(spec_path);
  if (!spec.t_max)
    throw qsl::SpecError("spec error: missing required field \"t_max\" for an mc sweep");

  std::vector<double> grid;
  grid.reserve(points);
  for (int i = 0; i < points; ++i)
    grid.push_back(*spec.t_max * static_cast<double>(i) / static_cast<double>(points - 1));

  const auto result =
      qsl::sweep_time(qsl::scenario_fidelity(spec), grid, spec.n, reps, seed);

  auto out = open_output(out_path);
  out << "# seed=" << seed << "\n";
  out << "t,detection_rate,exact_rate,n,replicates,seed\n";
  for (const auto& r : result.rows) {
    out << qsl::format_double(r.t) << ',' << qsl::format_double(r.detection_rate) << ','
        << qsl::format_double(r.exact_rate) << ',' << spec.n << ',' << reps << ',' << seed
        << '\n';
  }
  return kExitOk;
}

int cmd_control_simulate(const std::string& spec_path, int trace_points,
                         const std::string& out_path) {
  const qsl::ScenarioSpec spec = qsl::load_scenario(spec_path);
  if (spec.type != qsl::ScenarioSpec::Type::rotating)
    throw qsl::SpecError("spec error: control simulate needs a rotating scenario");
  if (!spec.omega_c || !spec.omega_true)
    throw qsl::SpecError(
        "spec error: missing required field \"omega_c\"/\"omega_true\" for control simulate");
  if (!spec.t_max)
    throw qsl::SpecError("spec error: missing required field \"t_max\" for control simulate");

  const double horizon = *spec.t_max;
  const int steps = spec.steps.value_or(10000);
  const int n_trace = std::clamp(trace_points, 101, 1000001);
  const qsl::RotatingScenario scenario{spec.omega, *spec.epsilon, spec.target, spec.n};
  const qsl::ParamHamiltonian ph = qsl::rotating_param_hamiltonian(scenario);

  // The k-target generator vanishes at t = 0; start the trace just after.
  const double start =
      spec.target == qsl::RotatingTarget::k ? horizon * 1e-6 : 0.0;
  std::vector<double> grid;
  grid.reserve(n_trace);
  for (int i = 0; i < n_trace; ++i)
    grid.push_back(start + horizon * static_cast<double>(i) / static_cast<double>(n_trace - 1));
  const qsl::EigenframeTrace trace = qsl::eigenframe_track(ph, *spec.omega_c, grid);

  const auto samples =
      qsl::simulate_controlled(ph, *spec.omega_true, *spec.omega_c, trace, horizon, steps);

  auto out = open_output(out_path);
  out << "t,fidelity\n";
  for (const auto& s : samples)
    out << qsl::format_double(s.t) << ',' << qsl::format_double(s.fidelity) << '\n';

  const double f0 = qsl::critical_fidelity({spec.n});
  const double s_signal = std::abs(*spec.omega_true - *spec.omega_c);
  nlohmann::json summary{{"f0", f0},
                         {"signal_strength", s_signal},
                         {"final_fidelity", samples.back().fidelity}};
  int code = kExitOk;
  try {
    const qsl::ControlledBound bound = qsl::controlled_qsl(trace, s_signal, f0);
    summary["tau_mt"] = bound.tau_mt;
    summary["tau_ml"] = bound.tau_ml;
  } catch (const qsl::InfeasibleError&) {
    summary["tau_mt"] = nullptr;
    summary["tau_ml"] = nullptr;
    code = kExitInfeasible;
  }
  const auto crossing = qsl::fidelity_crossing(samples, f0);
  summary["crossing_time"] = crossing ? nlohmann::json(*crossing) : nlohmann::json(nullptr);
  std::cout << summary.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) try {
  CLI::App app{"interrogation-time limits for qubit sensing"};
  app.require_subcommand(1);

  std::string spec_path, out_path;
  double omega = 1.0;
  std::int64_t n = 1;
  int grid = 199, m = 1;
  std::string kind = "single";
  double f_start = 1.0, f_stop = 1000.0;
  int f_count = 64;
  bool log_spacing = false;
  std::int64_t reps = 100000;
  std::uint64_t seed = 0;
  int points = 50;
  int trace_points = 4001;

  auto* bound = app.add_subcommand("bound", "compute interrogation-time bounds for a scenario");
  bound->add_option("spec", spec_path, "scenario spec (JSON)")->required();

  auto* curves = app.add_subcommand("curves", "emit CSV datasets");
  curves->require_subcommand(1);
  auto* fig1 = curves->add_subcommand("fig1", "bounds and actual time across probe weights");
  fig1->add_option("--omega", omega, "signal amplitude (rad/s)")->capture_default_str();
  fig1->add_option("--n", n, "measurement budget")->capture_default_str();
  fig1->add_option("--grid", grid, "number of interior c0^2 grid points")->capture_default_str();
  fig1->add_option("--m", m, "probe body count")->capture_default_str();
  fig1->add_option("--kind", kind, "single|product|ghz")->capture_default_str();
  fig1->add_option("--out", out_path, "output CSV path")->required();

  auto* biomag = curves->add_subcommand("biomag", "minimum detectable field vs frequency");
  biomag->add_option("--n", n, "measurement budget")->capture_default_str();
  biomag->add_option("--m", m, "probe body count")->capture_default_str();
  biomag->add_option("--kind", kind, "single|product|ghz")->capture_default_str();
  biomag->add_option("--f-start", f_start, "first frequency (Hz)")->capture_default_str();
  biomag->add_option("--f-stop", f_stop, "last frequency (Hz)")->capture_default_str();
  biomag->add_option("--f-count", f_count, "number of frequencies")->capture_default_str();
  biomag->add_flag("--log", log_spacing, "logarithmic frequency spacing");
  biomag->add_option("--out", out_path, "output CSV path")->required();

  auto* mc = app.add_subcommand("mc", "Monte Carlo detection sweep for a scenario");
  mc->add_option("spec", spec_path, "scenario spec (JSON)")->required();
  mc->add_option("--reps", reps, "replicates per grid point")->capture_default_str();
  mc->add_option("--seed", seed, "RNG seed")->capture_default_str();
  mc->add_option("--points", points, "time grid points over [0, t_max]")->capture_default_str();
  mc->add_option("--out", out_path, "output CSV path")->required();

  auto* control = app.add_subcommand("control", "quantum-control simulations");
  control->require_subcommand(1);
  auto* simulate = control->add_subcommand("simulate", "controlled evolution fidelity trace");
  simulate->add_option("spec", spec_path, "rotating scenario spec (JSON)")->required();
  simulate->add_option("--trace-points", trace_points, "eigenframe grid resolution")
      ->capture_default_str();
  simulate->add_option("--out", out_path, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  if (bound->parsed()) return cmd_bound(spec_path);
  if (fig1->parsed()) return cmd_curves_fig1(omega, n, grid, m, kind, out_path);
  if (biomag->parsed())
    return cmd_curves_biomag(n, m, kind, f_start, f_stop, f_count, log_spacing, out_path);
  if (mc->parsed()) return cmd_mc(spec_path, reps, seed, points, out_path);
  if (simulate->parsed()) return cmd_control_simulate(spec_path, trace_points, out_path);
  return kExitUsage;
} catch (const qsl::SpecError& e) {
  std::cerr << e.what() << "\n";
  return kExitUsage;
} catch (const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kExitUsage;
}
