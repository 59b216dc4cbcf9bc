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

#include "liouville/synthesis/synthesis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "liouville/core/error.hpp"
#include "liouville/core/parallel.hpp"
#include "liouville/flow/flow_engine.hpp"
#include "liouville/moser/moser.hpp"
#include "liouville/ot/map_recovery.hpp"
#include "liouville/synthesis/isotopy.hpp"
#include "liouville/synthesis/shear.hpp"

namespace liouville {

SynthesisMethod parse_synthesis_method(const std::string& name) {
  if (name == "brenier") return SynthesisMethod::kBrenier;
  if (name == "moser") return SynthesisMethod::kMoser;
  throw Error(ErrorCode::kInvalidArgument, "unknown synthesis method '" + name + "'");
}

std::string to_string(SynthesisMethod method) {
  return method == SynthesisMethod::kBrenier ? "brenier" : "moser";
}

namespace {

template <typename F>
auto run_stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.with_stage(name);
  }
}

// Brenier target on the vertex lattice plus its displacement isotopy.
std::shared_ptr<const IsotopyPath> brenier_path(const GridDensity& mu, const GridDensity& nu,
                                                const SynthesisOptions& options,
                                                SynthesisReport* report, MapTable* target) {
  const SinkhornResult ot = run_stage("sinkhorn", [&] {
    SinkhornResult r = solve_plan_sinkhorn(mu, nu, options.sinkhorn);
    if (!r.converged)
      throw Error(ErrorCode::kNonConvergence, "Sinkhorn stopped at marginal violation " +
                                                  std::to_string(r.marginal_violation));
    return r;
  });
  report->stages.push_back({"sinkhorn",
                            {{"eps", ot.eps},
                             {"iterations", static_cast<double>(ot.iterations)},
                             {"marginalViolation", ot.marginal_violation},
                             {"transportCost", ot.transport_cost},
                             {"entropicCost", ot.entropic_cost}}});

  const MapTable centers = run_stage("barycentric_map", [&] { return barycentric_map(ot.plan, mu.grid()); });
  *target = MapTable::from_function(NodeLattice::vertices(mu.grid()),
                                    [&](const Vec2& x) { return centers.evaluate(x); });
  report->stages.push_back({"barycentric_map", {{"maxDisplacement", target->max_displacement()}}});

  const MonotonicityReport mono = check_monotone(centers, options.monotone_probes, options.seed);
  report->stages.push_back({"check_monotone",
                            {{"minPairing", mono.min_pairing},
                             {"violations", static_cast<double>(mono.violations)},
                             {"probes", static_cast<double>(mono.probes)}}});
  if (mono.violations > 0)
    throw Error(ErrorCode::kNonMonotoneMap,
                std::to_string(mono.violations) + " monotonicity violations", "check_monotone");

  FoldScan scan;
  auto path = run_stage("displacement_isotopy", [&] {
    return displacement_isotopy(*target, options.fold_probe_times, &scan);
  });
  report->stages.push_back({"displacement_isotopy",
                            {{"minDet", scan.min_det},
                             {"probeTimes", static_cast<double>(scan.probe_times)}}});
  return path;
}

std::shared_ptr<const IsotopyPath> moser_path(const GridDensity& mu, const GridDensity& nu,
                                              const SynthesisOptions& options,
                                              SynthesisReport* report, MapTable* target) {
  MoserOptions mo;
  mo.step = options.step;
  const MoserDiffeo d = run_stage("moser", [&] { return build_moser_diffeo(mu, nu, mo); });
  *target = d.endpoint;
  const auto& det = d.endpoint_det.values();
  report->stages.push_back({"moser",
                            {{"maxDisplacement", d.endpoint.max_displacement()},
                             {"minDet", *std::min_element(det.begin(), det.end())},
                             {"maxDet", *std::max_element(det.begin(), det.end())}}});
  return d.isotopy;
}

}  // namespace

SynthesisResult synthesize_schedule(const GridDensity& mu, const GridDensity& nu,
                                    SynthesisMethod method, const VectorFieldFamily& family,
                                    const SynthesisOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (!(mu.grid() == nu.grid()))
    throw Error(ErrorCode::kGridMismatch, "densities must share a grid", "input");
  if (mu.min_value() <= 0.0 || nu.min_value() <= 0.0)
    throw Error(ErrorCode::kNegativeDensity, "densities must be strictly positive", "input");
  if (options.fragments < 1)
    throw Error(ErrorCode::kInvalidArgument, "need at least one fragment", "input");
  if (!family.is_coordinate_frame()) {
    if (!family.is_frame())
      throw Error(ErrorCode::kInvalidArgument, "synthesis needs a two-field frame", "input");
    run_stage("input", [&] {
      frame_condition(family, mu.domain());
      return 0;
    });
  }

  const NodeLattice lattice = NodeLattice::vertices(mu.grid());
  SynthesisResult result{FeedbackSchedule::zero(family.size()), MapTable::identity(lattice), {}};
  SynthesisReport& report = result.report;
  report.method = method;
  report.fragments = options.fragments;
  auto finish = [&] {
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  if (mu == nu) {
    finish();
    return result;
  }

  std::shared_ptr<const IsotopyPath> path =
      method == SynthesisMethod::kBrenier ? brenier_path(mu, nu, options, &report, &result.target)
                                          : moser_path(mu, nu, options, &report, &result.target);

  const Fragments frags = run_stage("fragment_isotopy", [&] {
    return fragment_isotopy(*path, options.fragments, lattice);
  });
  report.stages.push_back({"fragment_isotopy",
                           {{"maxDisplacement", frags.max_displacement},
                            {"displacementBound",
                             1.5 * result.target.max_displacement() / options.fragments},
                            {"compositionError", frags.composition_error},
                            {"compositionTolerance", frags.composition_tolerance}}});

  const int n = options.fragments;
  std::vector<std::optional<ShearPair>> pairs(n);
  run_stage("shear_factorization", [&] {
    parallel_for(n, [&](std::int64_t k) { pairs[k] = shear_factorization(frags.maps[k]); });
    return 0;
  });
  StageReport shear_stage{"shear_factorization",
                          {{"maxFactorizationError", 0.0},
                           {"minRowSlope", std::numeric_limits<double>::infinity()},
                           {"minColumnSlope", std::numeric_limits<double>::infinity()}}};
  for (const auto& p : pairs) {
    shear_stage.metrics["maxFactorizationError"] =
        std::max(shear_stage.metrics["maxFactorizationError"], p->factorization_error);
    shear_stage.metrics["minRowSlope"] = std::min(shear_stage.metrics["minRowSlope"], p->min_row_slope);
    shear_stage.metrics["minColumnSlope"] =
        std::min(shear_stage.metrics["minColumnSlope"], p->min_column_slope);
  }
  report.stages.push_back(shear_stage);

  result.schedule = run_stage("assembly", [&] {
    std::vector<FeedbackSchedule> parts;
    for (const auto& p : pairs) {
      parts.emplace_back(family.size(), std::vector<SchedulePiece>{shear_to_schedule_piece(p->first, family)});
      parts.emplace_back(family.size(), std::vector<SchedulePiece>{shear_to_schedule_piece(p->second, family)});
    }
    FeedbackSchedule s = compose_schedules(parts);
    validate_schedule(s, family);
    return s;
  });
  if (family.is_coordinate_frame()) {
    for (const SchedulePiece& p : result.schedule.pieces())
      report.single_active_field = report.single_active_field && p.active_index().has_value();
  } else {
    report.single_active_field = false;
  }
  report.stages.push_back({"assembly", {{"pieces", static_cast<double>(result.schedule.size())}}});

  run_stage("verification", [&] {
    FlowOptions flow(mu.domain());
    flow.step = options.step;
    const int nodes = lattice.size();
    std::vector<double> dev(nodes);
    parallel_for(nodes, [&](std::int64_t k) {
      const Vec2 x = lattice.node(static_cast<int>(k));
      dev[k] = (integrate_flow(result.schedule, family, x, 1.0, flow) - result.target.at(static_cast<int>(k))).norm();
    });
    report.final_sup_norm_deviation = *std::max_element(dev.begin(), dev.end());

    const int g = std::max(2, options.probe_grid);
    const Domain& dom = mu.domain();
    std::vector<Vec2> probes;
    for (int b = 0; b < g; ++b)
      for (int a = 0; a < g; ++a)
        probes.push_back(dom.lower() + Vec2(dom.width() * a / (g - 1.0), dom.height() * b / (g - 1.0)));
    const std::vector<Vec2> composed = compose_tables(frags.maps, probes);
    std::vector<double> fid(probes.size()), det(probes.size());
    parallel_for(static_cast<std::int64_t>(probes.size()), [&](std::int64_t k) {
      const FlowPoint p = integrate_flow_with_jacobian(result.schedule, family, probes[k], 1.0, flow);
      fid[k] = (p.position - composed[k]).norm();
      det[k] = p.jacobian.determinant();
    });
    report.composition_fidelity = *std::max_element(fid.begin(), fid.end());
    report.min_det_jacobian = *std::min_element(det.begin(), det.end());
    return 0;
  });
  report.stages.push_back({"verification",
                           {{"finalSupNormDeviation", report.final_sup_norm_deviation},
                            {"compositionFidelity", report.composition_fidelity},
                            {"minDetJacobian", report.min_det_jacobian}}});
  finish();
  return result;
}

nlohmann::json report_to_json(const SynthesisReport& report, bool include_runtime) {
  nlohmann::json stages = nlohmann::json::array();
  for (const StageReport& s : report.stages)
    stages.push_back({{"name", s.name}, {"errorMetrics", s.metrics}});
  nlohmann::json j{{"method", to_string(report.method)},
                   {"N", report.fragments},
                   {"stages", stages},
                   {"finalSupNormDeviation", report.final_sup_norm_deviation},
                   {"compositionFidelity", report.composition_fidelity},
                   {"minDetJacobian", report.min_det_jacobian},
                   {"singleActiveField", report.single_active_field}};
  if (include_runtime) j["runtimeSeconds"] = report.runtime_seconds;
  else j["runtimeSeconds"] = nullptr;
  return j;
}

}  // namespace liouville
