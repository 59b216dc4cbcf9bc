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
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace liouville::cli {

// Bad configuration or usage; exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A command's JSON config. Relative paths resolve against the directory of
// the config file. Every key has to be consumed by the command, so typos
// fail instead of being ignored.
class Config {
 public:
  // `overrides` are "key=value" strings; dotted keys address nested objects
  // and the value is parsed as JSON, falling back to a plain string.
  static Config load(const std::filesystem::path& path, const std::vector<std::string>& overrides);

  bool has(const std::string& key) const;
  const nlohmann::json& raw(const std::string& key);

  std::filesystem::path input_path(const std::string& key);
  std::filesystem::path output_path(const std::string& key, const std::string& fallback);
  std::optional<std::filesystem::path> optional_path(const std::string& key);

  double number(const std::string& key, double fallback);
  double positive(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback, int min_value);
  bool boolean(const std::string& key, bool fallback);
  std::string string(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback);

  // Throws ConfigError naming keys no accessor asked for.
  void finish() const;

 private:
  Config(nlohmann::json root, std::filesystem::path base);
  const nlohmann::json* find(const std::string& key);
  [[noreturn]] void bad(const std::string& key, const std::string& what) const;

  nlohmann::json root_;
  std::filesystem::path base_;
  std::set<std::string> used_;
};

// Collects output files and writes them only once every step succeeded.
class Outputs {
 public:
  void add(std::filesystem::path path, std::string contents);
  void commit() const;
  const std::vector<std::pair<std::filesystem::path, std::string>>& files() const { return files_; }

 private:
  std::vector<std::pair<std::filesystem::path, std::string>> files_;
};

std::string format_double(double v);

}  // namespace liouville::cli
