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

#include "liouville/core/lvg_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "liouville/core/error.hpp"

namespace liouville {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_lvg(std::ostream& out, const GridDensity& density) {
  const Domain& dom = density.domain();
  out << "LVG1 " << density.nx() << ' ' << density.ny() << ' ' << format_double(dom.lower().x())
      << ' ' << format_double(dom.lower().y()) << ' ' << format_double(dom.upper().x()) << ' '
      << format_double(dom.upper().y()) << '\n';
  for (int j = 0; j < density.ny(); ++j) {
    for (int i = 0; i < density.nx(); ++i) {
      if (i) out << ' ';
      out << format_double(density.at(i, j));
    }
    out << '\n';
  }
}

GridDensity read_lvg(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::kParse, "line 1: empty LVG1 input");
  std::istringstream hs(header);
  std::string magic;
  long long nx = 0, ny = 0;
  double x0, y0, x1, y1;
  if (!(hs >> magic) || magic != "LVG1")
    throw Error(ErrorCode::kParse, "line 1: expected LVG1 magic");
  if (!(hs >> nx >> ny >> x0 >> y0 >> x1 >> y1))
    throw Error(ErrorCode::kParse, "line 1: expected 'LVG1 nx ny x0 y0 x1 y1'");
  std::string extra;
  if (hs >> extra) throw Error(ErrorCode::kParse, "line 1: trailing text after header");
  if (nx < 1 || ny < 1 || nx * ny > (1LL << 28))
    throw Error(ErrorCode::kParse, "line 1: grid resolution out of range");
  if (!(x1 > x0 && y1 > y0)) throw Error(ErrorCode::kParse, "line 1: empty domain");

  std::vector<double> values;
  values.reserve(nx * ny);
  std::string line;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      double v;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": bad value '" + tok + "'");
      if (static_cast<long long>(values.size()) == nx * ny)
        throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": too many values");
      values.push_back(v);
    }
  }
  if (static_cast<long long>(values.size()) != nx * ny)
    throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected " +
                                       std::to_string(nx * ny) + " values, found " +
                                       std::to_string(values.size()));
  return GridDensity(CellGrid(Domain(Vec2(x0, y0), Vec2(x1, y1)), static_cast<int>(nx),
                              static_cast<int>(ny)),
                     std::move(values));
}

void write_lvg_file(const std::filesystem::path& path, const GridDensity& density) {
  std::ostringstream s;
  write_lvg(s, density);
  write_file_atomic(path, s.str());
}

GridDensity read_lvg_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return read_lvg(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

void write_density_csv(std::ostream& out, const GridDensity& density) {
  out << "x,y,rho\n";
  for (int k = 0; k < density.size(); ++k) {
    const Vec2 c = density.grid().center(k);
    out << format_double(c.x()) << ',' << format_double(c.y()) << ','
        << format_double(density.at(k)) << '\n';
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename onto " + path.string() + ": " + ec.message());
}

}  // namespace liouville
