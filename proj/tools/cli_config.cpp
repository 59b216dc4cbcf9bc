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

#include "cli_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "liouville/core/lvg_io.hpp"

namespace liouville::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json::json_pointer pointer_of(const std::string& key) {
  std::string p;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    p += '/' + key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return json::json_pointer(p);
}

void collect_keys(const json& j, const std::string& prefix, std::vector<std::string>* out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object() && !it->empty()) collect_keys(*it, key, out);
    else out->push_back(key);
  }
}

}  // namespace

Config::Config(json root, fs::path base) : root_(std::move(root)), base_(std::move(base)) {}

Config Config::load(const fs::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError(path.string() + ": config must be a JSON object");
  for (const std::string& s : overrides) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + s + "'");
    const std::string key = s.substr(0, eq), text = s.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;
    root[pointer_of(key)] = value;
  }
  return Config(std::move(root), fs::absolute(path).parent_path());
}

const json* Config::find(const std::string& key) {
  const json::json_pointer p = pointer_of(key);
  if (!root_.contains(p)) return nullptr;
  used_.insert(key);
  return &root_.at(p);
}

void Config::bad(const std::string& key, const std::string& what) const {
  throw ConfigError("config key '" + key + "': " + what);
}

bool Config::has(const std::string& key) const { return root_.contains(pointer_of(key)); }

const json& Config::raw(const std::string& key) {
  const json* j = find(key);
  if (!j) bad(key, "missing");
  // Nested keys below a raw object count as consumed.
  if (j->is_object()) {
    std::vector<std::string> inner;
    collect_keys(*j, key, &inner);
    used_.insert(inner.begin(), inner.end());
  }
  return *j;
}

fs::path Config::input_path(const std::string& key) {
  const json* j = find(key);
  if (!j) bad(key, "missing");
  if (!j->is_string()) bad(key, "expected a path string");
  const fs::path p = base_ / j->get<std::string>();
  if (!fs::exists(p)) bad(key, "no such file " + p.string());
  return p;
}

fs::path Config::output_path(const std::string& key, const std::string& fallback) {
  const json* j = find(key);
  if (j && !j->is_string()) bad(key, "expected a path string");
  return base_ / (j ? j->get<std::string>() : fallback);
}

std::optional<fs::path> Config::optional_path(const std::string& key) {
  const json* j = find(key);
  if (!j || j->is_null()) return std::nullopt;
  return input_path(key);
}

double Config::number(const std::string& key, double fallback) {
  const json* j = find(key);
  if (!j) return fallback;
  if (!j->is_number()) bad(key, "expected a number");
  const double v = j->get<double>();
  if (!std::isfinite(v)) bad(key, "expected a finite number");
  return v;
}

double Config::positive(const std::string& key, double fallback) {
  const double v = number(key, fallback);
  if (!(v > 0.0)) bad(key, "expected a positive number");
  return v;
}

int Config::integer(const std::string& key, int fallback, int min_value) {
  const json* j = find(key);
  if (!j) return fallback;
  if (!j->is_number_integer()) bad(key, "expected an integer");
  const long long v = j->get<long long>();
  if (v < min_value || v > 1'000'000'000) bad(key, "integer out of range");
  return static_cast<int>(v);
}

bool Config::boolean(const std::string& key, bool fallback) {
  const json* j = find(key);
  if (!j) return fallback;
  if (!j->is_boolean()) bad(key, "expected true or false");
  return j->get<bool>();
}

std::string Config::string(const std::string& key, const std::string& fallback) {
  const json* j = find(key);
  if (!j) return fallback;
  if (!j->is_string()) bad(key, "expected a string");
  return j->get<std::string>();
}

std::vector<double> Config::numbers(const std::string& key, std::vector<double> fallback) {
  const json* j = find(key);
  if (!j) return fallback;
  if (!j->is_array()) bad(key, "expected an array of numbers");
  std::vector<double> v;
  for (const json& e : *j) {
    if (!e.is_number()) bad(key, "expected an array of numbers");
    v.push_back(e.get<double>());
    if (!std::isfinite(v.back())) bad(key, "expected finite numbers");
  }
  return v;
}

void Config::finish() const {
  std::vector<std::string> keys;
  collect_keys(root_, "", &keys);
  std::string unknown;
  for (const std::string& k : keys) {
    bool covered = used_.count(k) > 0;
    for (std::size_t dot = k.rfind('.'); !covered && dot != std::string::npos;
         dot = dot == 0 ? std::string::npos : k.rfind('.', dot - 1))
      covered = used_.count(k.substr(0, dot)) > 0;
    if (!covered) unknown += (unknown.empty() ? "" : ", ") + k;
  }
  if (!unknown.empty()) throw ConfigError("unknown config keys: " + unknown);
}

void Outputs::add(fs::path path, std::string contents) {
  files_.emplace_back(std::move(path), std::move(contents));
}

void Outputs::commit() const {
  for (const auto& [path, contents] : files_) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_file_atomic(path, contents);
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace liouville::cli
