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
#include <iosfwd>
#include <string>

#include "liouville/core/grid.hpp"

namespace liouville {

// LVG1 grid density text format:
//   LVG1 nx ny x0 y0 x1 y1
//   nx*ny decimal values, row-major with the y index outermost.
// Values are written with 17 significant digits, one grid row per line.
void write_lvg(std::ostream& out, const GridDensity& density);
GridDensity read_lvg(std::istream& in);

void write_lvg_file(const std::filesystem::path& path, const GridDensity& density);
GridDensity read_lvg_file(const std::filesystem::path& path);

// "x,y,rho" per cell center, one header line.
void write_density_csv(std::ostream& out, const GridDensity& density);

// Writes via `<path>.tmp` then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace liouville
