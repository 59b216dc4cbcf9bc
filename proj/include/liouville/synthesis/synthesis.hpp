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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "liouville/core/grid.hpp"
#include "liouville/core/lattice.hpp"
#include "liouville/core/schedule.hpp"
#include "liouville/core/vector_field_family.hpp"
#include "liouville/ot/sinkhorn.hpp"

namespace liouville {

enum class SynthesisMethod { kBrenier, kMoser };

SynthesisMethod parse_synthesis_method(const std::string& name);
std::string to_string(SynthesisMethod method);

struct SynthesisOptions {
  int fragments = 16;
  double step = 1e-3;
  SinkhornOptions sinkhorn;    // Brenier path
  int monotone_probes = 20000;
  int fold_probe_times = 9;
  int probe_grid = 17;         // composition-fidelity probes per axis
  std::uint64_t seed = 1;
};

struct StageReport {
  std::string name;
  std::map<std::string, double> metrics;
};

struct SynthesisReport {
  SynthesisMethod method = SynthesisMethod::kMoser;
  int fragments = 0;
  std::vector<StageReport> stages;
  double final_sup_norm_deviation = 0.0;  // |Phi^1 - T| over lattice nodes
  double composition_fidelity = 0.0;      // |Phi^1 - Q_N o .. o Q_1| on probes
  double min_det_jacobian = 1.0;          // min det D Phi^1 on probes
  bool single_active_field = true;        // every shear piece has one control
  double runtime_seconds = 0.0;
};

struct SynthesisResult {
  FeedbackSchedule schedule;
  MapTable target;  // T on the vertex lattice
  SynthesisReport report;
};

// mu -> nu steering schedule. Brenier: Sinkhorn plan, barycentric map,
// monotonicity check, displacement isotopy. Moser: the Moser isotopy. Then
// N fragments, two shears per fragment, one piece per shear, assembled into
// a unit-time schedule. Errors propagate with the failing stage attached.
SynthesisResult synthesize_schedule(const GridDensity& mu, const GridDensity& nu,
                                    SynthesisMethod method, const VectorFieldFamily& family,
                                    const SynthesisOptions& options = {});

nlohmann::json report_to_json(const SynthesisReport& report, bool include_runtime);

}  // namespace liouville
