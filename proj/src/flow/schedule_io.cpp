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

#include "liouville/flow/schedule_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "liouville/core/error.hpp"
#include "liouville/core/lvg_io.hpp"

namespace liouville {

using nlohmann::json;

namespace {

json table_to_json(const ScalarTable& t) {
  const NodeLattice& l = t.lattice();
  return json{{"origin", {l.origin.x(), l.origin.y()}},
              {"spacing", {l.dx, l.dy}},
              {"shape", {l.nx, l.ny}},
              {"values", t.values()}};
}

ScalarTable table_from_json(const json& j) {
  NodeLattice l;
  l.origin = Vec2(j.at("origin").at(0).get<double>(), j.at("origin").at(1).get<double>());
  l.dx = j.at("spacing").at(0).get<double>();
  l.dy = j.at("spacing").at(1).get<double>();
  l.nx = j.at("shape").at(0).get<int>();
  l.ny = j.at("shape").at(1).get<int>();
  if (!(l.dx > 0.0 && l.dy > 0.0)) throw Error(ErrorCode::kParse, "table spacing must be positive");
  return ScalarTable(l, j.at("values").get<std::vector<double>>());
}

json domain_to_json(const Domain& d) {
  return json::array({d.lower().x(), d.lower().y(), d.upper().x(), d.upper().y()});
}

Domain domain_from_json(const json& j) {
  return Domain(Vec2(j.at(0).get<double>(), j.at(1).get<double>()),
                Vec2(j.at(2).get<double>(), j.at(3).get<double>()));
}

json field_to_json(const PotentialVelocityField& f) {
  const CellGrid& g = f.grid();
  std::vector<double> a(f.rho_a().values().begin(), f.rho_a().values().end());
  std::vector<double> b(f.rho_b().values().begin(), f.rho_b().values().end());
  return json{{"type", "potential-field"},
              {"domain", domain_to_json(g.domain())},
              {"shape", {g.nx(), g.ny()}},
              {"rho_a", a},
              {"rho_b", b},
              {"face_gx", f.gradient_x().values()},
              {"face_gy", f.gradient_y().values()}};
}

std::shared_ptr<const PotentialVelocityField> field_from_json(const json& j) {
  if (j.at("type").get<std::string>() != "potential-field")
    throw Error(ErrorCode::kParse, "unknown field type");
  const CellGrid g(domain_from_json(j.at("domain")), j.at("shape").at(0).get<int>(),
                   j.at("shape").at(1).get<int>());
  return std::make_shared<const PotentialVelocityField>(
      GridDensity(g, j.at("rho_a").get<std::vector<double>>()),
      GridDensity(g, j.at("rho_b").get<std::vector<double>>()),
      j.at("face_gx").get<std::vector<double>>(), j.at("face_gy").get<std::vector<double>>());
}

json shear_to_json(const ShearControl& s) {
  json j{{"type", "shear"}, {"axis", s.axis()}, {"table", table_to_json(s.image())}};
  if (s.preimage()) j["preimage"] = table_to_json(*s.preimage());
  return j;
}

ShearControl shear_from_json(const json& j) {
  std::optional<ScalarTable> pre;
  if (j.contains("preimage")) pre = table_from_json(j.at("preimage"));
  return ShearControl(j.at("axis").get<int>(), table_from_json(j.at("table")), std::move(pre));
}

}  // namespace

json family_to_json(const VectorFieldFamily& family) {
  switch (family.kind()) {
    case VectorFieldFamily::Kind::kCoordinate:
      return json{{"type", "coordinate"}};
    case VectorFieldFamily::Kind::kRotated:
      return json{{"type", "rotated"}, {"theta0", family.theta0()}, {"twist", family.twist()}};
    case VectorFieldFamily::Kind::kLinear: {
      json ms = json::array();
      for (const Mat2& a : family.matrices()) ms.push_back({a(0, 0), a(0, 1), a(1, 0), a(1, 1)});
      return json{{"type", "linear"}, {"matrices", ms}};
    }
  }
  return json();
}

VectorFieldFamily family_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "coordinate") return VectorFieldFamily::coordinate();
  if (type == "rotated")
    return VectorFieldFamily::rotated(j.at("theta0").get<double>(), j.value("twist", 0.0));
  if (type == "linear") {
    std::vector<Mat2> ms;
    for (const json& m : j.at("matrices")) {
      const auto v = m.get<std::vector<double>>();
      if (v.size() != 4) throw Error(ErrorCode::kParse, "linear field matrix needs 4 entries");
      Mat2 a;
      a << v[0], v[1], v[2], v[3];
      ms.push_back(a);
    }
    return VectorFieldFamily::linear(std::move(ms));
  }
  throw Error(ErrorCode::kParse, "unknown family type '" + type + "'");
}

json schedule_to_json(const ScheduleDocument& doc) {
  const FeedbackSchedule& s = doc.schedule;
  json out{{"format", "LVS1"}, {"field_count", s.field_count()}};
  if (doc.family) out["family"] = family_to_json(*doc.family);
  if (doc.domain) out["domain"] = domain_to_json(*doc.domain);

  std::map<const PotentialVelocityField*, int> field_index;
  json fields = json::array();
  json pieces = json::array();
  for (const SchedulePiece& p : s.pieces()) {
    json pj{{"duration", p.duration}, {"window", {p.window_begin, p.window_end}}};
    const std::optional<int> active = p.active_index();
    if (active) pj["active"] = *active; else pj["active"] = "all";
    if (const auto* c = std::get_if<ConstantControl>(&p.control)) {
      pj["control"] = json{{"type", "constant"}, {"values", c->values}};
    } else if (const auto* sh = std::get_if<ShearControl>(&p.control)) {
      pj["control"] = shear_to_json(*sh);
    } else {
      const auto& fi = std::get<FrameInversionControl>(p.control);
      json vel;
      if (const auto* inner = std::get_if<ShearControl>(&fi.velocity)) {
        vel = shear_to_json(*inner);
      } else {
        const auto& field = std::get<std::shared_ptr<const PotentialVelocityField>>(fi.velocity);
        auto [it, inserted] = field_index.emplace(field.get(), static_cast<int>(fields.size()));
        if (inserted) fields.push_back(field_to_json(*field));
        vel = json{{"field", it->second}};
      }
      pj["control"] = json{{"type", "frame-inversion"}, {"velocity", vel}};
    }
    pieces.push_back(std::move(pj));
  }
  if (!fields.empty()) out["fields"] = std::move(fields);
  out["pieces"] = std::move(pieces);
  return out;
}

ScheduleDocument schedule_from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != "LVS1")
      throw Error(ErrorCode::kParse, "schedule format must be LVS1");
    const int m = j.at("field_count").get<int>();
    std::vector<std::shared_ptr<const PotentialVelocityField>> fields;
    if (j.contains("fields"))
      for (const json& f : j.at("fields")) fields.push_back(field_from_json(f));

    std::vector<SchedulePiece> pieces;
    int index = 0;
    for (const json& pj : j.at("pieces")) {
      try {
        SchedulePiece p;
        p.duration = pj.at("duration").get<double>();
        p.window_begin = pj.at("window").at(0).get<double>();
        p.window_end = pj.at("window").at(1).get<double>();
        const json& c = pj.at("control");
        const std::string type = c.at("type").get<std::string>();
        if (type == "constant") {
          p.control = ConstantControl{c.at("values").get<std::vector<double>>()};
        } else if (type == "shear") {
          p.control = shear_from_json(c);
        } else if (type == "frame-inversion") {
          const json& v = c.at("velocity");
          FrameInversionControl fi;
          if (v.contains("field")) {
            const int k = v.at("field").get<int>();
            if (k < 0 || k >= static_cast<int>(fields.size()))
              throw Error(ErrorCode::kParse, "field reference out of range");
            fi.velocity = fields[k];
          } else {
            fi.velocity = shear_from_json(v);
          }
          p.control = std::move(fi);
        } else {
          throw Error(ErrorCode::kParse, "unknown control type '" + type + "'");
        }
        pieces.push_back(std::move(p));
      } catch (const Error& e) {
        throw Error(ErrorCode::kParse, "piece " + std::to_string(index) + ": " + e.detail());
      } catch (const json::exception& e) {
        throw Error(ErrorCode::kParse, "piece " + std::to_string(index) + ": " + e.what());
      }
      ++index;
    }
    ScheduleDocument doc{FeedbackSchedule(m, std::move(pieces)), std::nullopt, std::nullopt};
    if (j.contains("family")) doc.family = family_from_json(j.at("family"));
    if (j.contains("domain")) doc.domain = domain_from_json(j.at("domain"));
    if (doc.family) validate_schedule(doc.schedule, *doc.family);
    return doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("schedule document: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    throw Error(ErrorCode::kParse, "schedule document: " + e.detail());
  }
}

void write_schedule_file(const std::filesystem::path& path, const ScheduleDocument& doc) {
  write_file_atomic(path, schedule_to_json(doc).dump() + "\n");
}

ScheduleDocument read_schedule_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  try {
    return schedule_from_json(j);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

}  // namespace liouville
