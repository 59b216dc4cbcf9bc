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

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "liouville/core/domain.hpp"
#include "liouville/core/schedule.hpp"
#include "liouville/core/vector_field_family.hpp"

namespace liouville {

// Schedule document "LVS1" (JSON):
//   { "format": "LVS1", "field_count": m,
//     "family": {...}, "domain": [x0, y0, x1, y1],          (optional)
//     "fields": [<field>, ...],                              (optional)
//     "pieces": [ { "duration": d, "window": [a, b], "active": i | "all",
//                   "control": <control> }, ... ] }
// Controls:
//   { "type": "constant", "values": [c_1, ..., c_m] }
//   { "type": "shear", "axis": i, "table": <table>, "preimage": <table> }
//   { "type": "frame-inversion", "velocity": <shear control> | { "field": k } }
// where k indexes the shared "fields" list.
// Tables: { "origin": [x, y], "spacing": [dx, dy], "shape": [nx, ny],
//           "values": [...] } (row-major, y outermost).
// Fields: { "type": "potential-field", "domain": [...], "shape": [nx, ny],
//           "rho_a": [...], "rho_b": [...], "face_gx": [...], "face_gy": [...] }
// Doubles are written in shortest round-trip form, so write->read
// reproduces the schedule exactly.
struct ScheduleDocument {
  FeedbackSchedule schedule;
  std::optional<VectorFieldFamily> family;
  std::optional<Domain> domain;
};

nlohmann::json family_to_json(const VectorFieldFamily& family);
VectorFieldFamily family_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const ScheduleDocument& doc);
ScheduleDocument schedule_from_json(const nlohmann::json& j);

void write_schedule_file(const std::filesystem::path& path, const ScheduleDocument& doc);
ScheduleDocument read_schedule_file(const std::filesystem::path& path);

}  // namespace liouville
