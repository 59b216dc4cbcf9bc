// Copyright 2026 The Liouville Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// liouville: command-line driver for density generation, optimal transport,
// schedule synthesis, simulation and verification. See README.md for the
// config schema of each command.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_config.hpp"
#include "liouville/core/error.hpp"
#include "liouville/core/lvg_io.hpp"
#include "liouville/core/parallel.hpp"
#include "liouville/flow/schedule_io.hpp"
#include "liouville/ot/exact_lp.hpp"
#include "liouville/ot/map_recovery.hpp"
#include "liouville/ot/quantile_1d.hpp"
#include "liouville/ot/sinkhorn.hpp"
#include "liouville/synthesis/synthesis.hpp"
#include "liouville/transport/density_transport.hpp"
#include "liouville/verification/test_densities.hpp"
#include "liouville/verification/verification.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace liouville;
using cli::Config;
using cli::ConfigError;
using cli::format_double;
using cli::Outputs;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::string lvg_text(const GridDensity& d) {
  std::ostringstream out;
  write_lvg(out, d);
  return out.str();
}

std::string csv_text(const GridDensity& d) {
  std::ostringstream out;
  write_density_csv(out, d);
  return out.str();
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

Vec2 vec2(Config& c, const std::string& key, const Vec2& fallback) {
  const std::vector<double> v = c.numbers(key, {fallback.x(), fallback.y()});
  if (v.size() != 2) throw ConfigError("config key '" + key + "': expected [x, y]");
  return Vec2(v[0], v[1]);
}

// Unreadable or invalid input densities are configuration errors.
GridDensity load_density(Config& c, const std::string& key) {
  const fs::path path = c.input_path(key);
  try {
    return validate_density(read_lvg_file(path), false);
  } catch (const Error& e) {
    throw ConfigError(path.string() + ": " + e.detail());
  }
}

void require_same_grid(const GridDensity& a, const GridDensity& b) {
  if (!(a.grid() == b.grid()))
    throw ConfigError("mu and nu must be on the same grid");
}

VectorFieldFamily family_from_config(Config& c, const std::optional<VectorFieldFamily>& fallback) {
  if (!c.has("family")) return fallback.value_or(VectorFieldFamily::coordinate());
  const json& j = c.raw("family");
  try {
    return family_from_json(j.is_string() ? json{{"type", j}} : j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key 'family': ") + e.what());
  } catch (const Error& e) {
    throw ConfigError("config key 'family': " + e.detail());
  }
}

FlowOptions flow_from_config(Config& c, const Domain& domain) {
  FlowOptions f(domain);
  f.step = c.positive("step", f.step);
  f.margin = c.positive("margin", f.margin);
  return f;
}

SinkhornOptions sinkhorn_from_config(Config& c) {
  SinkhornOptions o;
  o.eps = c.number("eps", 0.0);
  o.tolerance = c.positive("tolerance", o.tolerance);
  o.max_iterations = c.integer("max_iterations", o.max_iterations, 1);
  return o;
}

void report_written(const Outputs& out) {
  for (const auto& f : out.files()) std::cout << "wrote " << f.first.string() << "\n";
}

// gen: the standard test densities.
int cmd_gen(Config& c) {
  const std::string pair = c.string("pair", "bump");
  const fs::path mu_path = c.output_path("out_mu", "mu.lvg");
  const fs::path nu_path = c.output_path("out_nu", "nu.lvg");
  DensityPair p{GridDensity(CellGrid(Domain::unit(), 1, 1), {1.0}),
                GridDensity(CellGrid(Domain::unit(), 1, 1), {1.0})};
  if (pair == "bump") {
    BumpPairSpec s;
    s.n = c.integer("n", s.n, 2);
    s.mu_center = vec2(c, "mu_center", s.mu_center);
    s.nu_center = vec2(c, "nu_center", s.nu_center);
    s.sigma = c.positive("sigma", s.sigma);
    s.floor = c.positive("floor", s.floor);
    c.finish();
    p = bump_pair(s);
  } else if (pair == "cosine") {
    CosinePairSpec s;
    s.n = c.integer("n", s.n, 2);
    s.center = vec2(c, "center", s.center);
    s.sigma = c.positive("sigma", s.sigma);
    s.floor = c.positive("floor", s.floor);
    s.amplitude = c.number("amplitude", s.amplitude);
    c.finish();
    p = cosine_pair(s);
  } else if (pair == "translation") {
    TranslationPairSpec s;
    s.n = c.integer("n", s.n, 2);
    s.mu_center = c.number("mu_center", s.mu_center);
    s.shift = c.number("shift", s.shift);
    s.sigma = c.positive("sigma", s.sigma);
    s.floor = c.positive("floor", s.floor);
    c.finish();
    p = translation_pair(s);
  } else {
    throw ConfigError("config key 'pair': expected bump, cosine or translation");
  }
  Outputs out;
  out.add(mu_path, lvg_text(p.mu));
  out.add(nu_path, lvg_text(p.nu));
  out.commit();
  report_written(out);
  return kExitPass;
}

// ot: Sinkhorn plan, barycentric map and summary; exact LP for small grids.
int cmd_ot(Config& c) {
  const GridDensity mu = load_density(c, "mu"), nu = load_density(c, "nu");
  require_same_grid(mu, nu);
  const SinkhornOptions opts = sinkhorn_from_config(c);
  const int exact_max = c.integer("exact_max_points", 256, 0);
  const double threshold = c.number("plan_threshold", 1e-8);
  const fs::path plan_path = c.output_path("out_plan", "plan.csv");
  const fs::path map_path = c.output_path("out_map", "map.csv");
  const fs::path summary_path = c.output_path("out_summary", "summary.json");
  c.finish();

  const SinkhornResult s = solve_plan_sinkhorn(mu, nu, opts);
  std::string plan = "i,j,gamma_ij\n";
  s.plan.for_each_entry(threshold, [&](int i, int j, double m) {
    plan += std::to_string(i) + ',' + std::to_string(j) + ',' + format_double(m) + '\n';
  });

  const MapTable t = barycentric_map(s.plan, mu.grid());
  std::string map = "x,y,Tx,Ty,detJ\n";
  const NodeLattice& l = t.lattice();
  for (int k = 0; k < l.size(); ++k) {
    const Vec2 x = l.node(k), y = t.at(k);
    map += format_double(x.x()) + ',' + format_double(x.y()) + ',' + format_double(y.x()) + ',' +
           format_double(y.y()) + ',' + format_double(t.jacobian(x).determinant()) + '\n';
  }

  json summary{{"cost", s.transport_cost},
               {"w2", std::sqrt(std::max(s.transport_cost, 0.0))},
               {"marginalViolation", s.marginal_violation},
               {"eps", s.eps},
               {"iters", s.iterations},
               {"converged", s.converged}};
  // The plan cost is biased upward by the entropic blur; the debiased
  // divergence is the better distance estimate.
  summary["w2Debiased"] = sinkhorn_divergence(mu, nu, opts).w2_estimate;
  if (mu.size() <= exact_max) {
    const TransportPlan e = solve_plan_exact(to_weighted_points(mu), to_weighted_points(nu),
                                             ExactSolverOptions{std::max(exact_max, 1)});
    summary["exact"] = {{"cost", e.cost()}, {"w2", e.w2()}};
  }
  Outputs out;
  out.add(plan_path, std::move(plan));
  out.add(map_path, std::move(map));
  out.add(summary_path, json_text(summary));
  out.commit();
  report_written(out);
  return s.converged ? kExitPass : kExitNumeric;
}

// synthesize: schedule file and stage report.
int cmd_synthesize(Config& c) {
  const GridDensity mu = load_density(c, "mu"), nu = load_density(c, "nu");
  require_same_grid(mu, nu);
  const SynthesisMethod method = [&] {
    try {
      return parse_synthesis_method(c.string("method", "moser"));
    } catch (const Error& e) {
      throw ConfigError("config key 'method': " + e.detail());
    }
  }();
  const VectorFieldFamily family = family_from_config(c, std::nullopt);
  SynthesisOptions o;
  o.fragments = c.integer("fragments", o.fragments, 1);
  o.step = c.positive("step", o.step);
  o.sinkhorn = sinkhorn_from_config(c);
  o.monotone_probes = c.integer("monotone_probes", o.monotone_probes, 0);
  o.fold_probe_times = c.integer("fold_probe_times", o.fold_probe_times, 2);
  o.probe_grid = c.integer("probe_grid", o.probe_grid, 2);
  o.seed = static_cast<std::uint64_t>(c.integer("seed", 1, 0));
  const bool runtime = c.boolean("include_runtime", false);
  const fs::path schedule_path = c.output_path("out_schedule", "schedule.json");
  const fs::path report_path = c.output_path("out_report", "synthesis_report.json");
  c.finish();

  const auto start = std::chrono::steady_clock::now();
  SynthesisResult r = synthesize_schedule(mu, nu, method, family, o);
  r.report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outputs out;
  out.add(schedule_path,
          schedule_to_json(ScheduleDocument{r.schedule, family, mu.domain()}).dump() + "\n");
  out.add(report_path, json_text(report_to_json(r.report, runtime)));
  out.commit();
  report_written(out);
  std::cout << "finalSupNormDeviation " << format_double(r.report.final_sup_norm_deviation) << "\n";
  return kExitPass;
}

// simulate: frames of the pushed density with a manifest.
int cmd_simulate(Config& c) {
  const GridDensity rho0 = load_density(c, "density");
  const ScheduleDocument doc = read_schedule_file(c.input_path("schedule"));
  const VectorFieldFamily family = family_from_config(c, doc.family);
  const FlowOptions flow = flow_from_config(c, rho0.domain());
  const std::vector<double> times = c.numbers("times", {0.0, 0.25, 0.5, 0.75, 1.0});
  for (double t : times)
    if (t < 0.0 || t > 1.0) throw ConfigError("config key 'times': times must lie in [0, 1]");
  PushforwardOptions po;
  po.max_mass_drift = c.positive("max_mass_drift", po.max_mass_drift);
  const bool csv = c.boolean("csv", true);
  const fs::path dir = c.output_path("out_dir", "frames");
  c.finish();
  validate_schedule(doc.schedule, family);

  Outputs out;
  json frames = json::array();
  for (std::size_t k = 0; k < times.size(); ++k) {
    const PushforwardResult r = pushforward_density(rho0, doc.schedule, family, times[k], flow, po);
    char stem[32];
    std::snprintf(stem, sizeof(stem), "frame_%03zu", k);
    json entry{{"time", times[k]},
               {"lvg", std::string(stem) + ".lvg"},
               {"massBeforeRenormalization", r.mass_before},
               {"minDetJacobian", r.min_det}};
    out.add(dir / (std::string(stem) + ".lvg"), lvg_text(r.density));
    if (csv) {
      entry["csv"] = std::string(stem) + ".csv";
      out.add(dir / (std::string(stem) + ".csv"), csv_text(r.density));
    }
    frames.push_back(entry);
  }
  out.add(dir / "manifest.json", json_text({{"format", "LVF1"}, {"frames", frames}}));
  out.commit();
  report_written(out);
  return kExitPass;
}

// verify: steering report and, on request, the metric property suite.
int cmd_verify(Config& c) {
  const GridDensity mu = load_density(c, "mu"), nu = load_density(c, "nu");
  require_same_grid(mu, nu);
  const std::optional<fs::path> schedule_path = c.optional_path("schedule");
  std::optional<ScheduleDocument> doc;
  if (schedule_path) doc = read_schedule_file(*schedule_path);
  const VectorFieldFamily family =
      family_from_config(c, doc ? doc->family : std::optional<VectorFieldFamily>());
  const FlowOptions flow = flow_from_config(c, mu.domain());
  const double tol_l1 = c.positive("tol_l1", 0.02);
  const double tol_w2 = c.positive("tol_w2", 0.02 * mu.domain().diameter());
  const int trials = c.integer("metric_trials", 0, 0);
  const int seed = c.integer("seed", 1, 0);
  const fs::path report_path = c.output_path("out_report", "verify_report.json");
  c.finish();

  const FeedbackSchedule schedule = doc ? doc->schedule : FeedbackSchedule::zero(family.size());
  const SteeringReport s = verify_steering(mu, nu, schedule, family, tol_w2, tol_l1, flow);
  json report = steering_report_to_json(s);
  bool pass = s.pass;
  if (trials > 0) {
    const MetricSuiteReport m = metric_property_suite(static_cast<std::uint64_t>(seed), trials);
    report["metricSuite"] = metric_report_to_json(m);
    pass = pass && m.pass;
    report["pass"] = pass;
  }
  Outputs out;
  out.add(report_path, json_text(report));
  out.commit();
  report_written(out);
  std::cout << (pass ? "pass" : "fail") << ": L1 " << format_double(s.l1_error) << ", W2 "
            << format_double(s.w2.w2) << "\n";
  return pass ? kExitPass : kExitFail;
}

// oracle1d: monotone rearrangement between two 1D cell profiles.
int cmd_oracle1d(Config& c) {
  const double lower = c.number("lower", 0.0), upper = c.number("upper", 1.0);
  const std::vector<double> mu = c.numbers("mu", {}), nu = c.numbers("nu", {});
  const fs::path map_path = c.output_path("out_map", "quantile_map.csv");
  const fs::path summary_path = c.output_path("out_summary", "quantile_summary.json");
  c.finish();
  const QuantileMap1D q = [&] {
    try {
      return quantile_map_1d(lower, upper, mu, nu);
    } catch (const Error& e) {
      throw ConfigError(e.detail());
    }
  }();
  std::string map = "x,T\n";
  for (std::size_t k = 0; k < q.centers.size(); ++k)
    map += format_double(q.centers[k]) + ',' + format_double(q.map[k]) + '\n';
  Outputs out;
  out.add(map_path, std::move(map));
  out.add(summary_path, json_text({{"cost", q.cost}, {"w2", std::sqrt(q.cost)}}));
  out.commit();
  report_written(out);
  return kExitPass;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kIo:
    case ErrorCode::kGridMismatch:
      return kExitUsage;
    default:
      return kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density steering with feedback controls"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (default: LIOUVILLE_THREADS or all)")
      ->check(CLI::NonNegativeNumber);

  struct Command {
    const char* name;
    const char* help;
    int (*run)(Config&);
  };
  const Command commands[] = {
      {"gen", "write a standard test density pair", cmd_gen},
      {"ot", "optimal transport plan, map and summary", cmd_ot},
      {"synthesize", "synthesize a steering schedule", cmd_synthesize},
      {"simulate", "push a density through a schedule", cmd_simulate},
      {"verify", "check that a schedule steers mu to nu", cmd_verify},
      {"oracle1d", "1D quantile map between two profiles", cmd_oracle1d},
  };
  std::string config_path;
  std::vector<std::string> overrides;
  for (const Command& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("config", config_path, "JSON config file")->required();
    sub->add_option("--set", overrides, "override a config value, key=value")->take_all();
    sub->add_option("--threads", threads, "worker thread cap")->check(CLI::NonNegativeNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  if (threads > 0) set_thread_count(threads);

  const Command* chosen = nullptr;
  for (const Command& cmd : commands)
    if (app.got_subcommand(cmd.name)) chosen = &cmd;

  try {
    Config config = Config::load(config_path, overrides);
    return chosen->run(config);
  } catch (const ConfigError& e) {
    std::cerr << "liouville " << chosen->name << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "liouville " << chosen->name << ": " << to_string(e.code());
    if (!e.stage().empty()) std::cerr << " in stage " << e.stage();
    std::cerr << ": " << e.detail() << "\n";
    return e.stage() == "input" ? kExitUsage : exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "liouville " << chosen->name << ": " << e.what() << "\n";
    return kExitNumeric;
  }
}
