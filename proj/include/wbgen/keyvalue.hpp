// Copyright 2026 The wbgen Authors
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
#include <map>
#include <string>
#include <vector>

namespace wbgen {

/// Flat `key = value` / `key = [x, y, z]` text, `#` starts a comment.
/// Values are kept as lists of numbers; scalars are one-element lists.
class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text);
  static KeyValueFile load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  double scalar(const std::string& key) const;
  double scalar_or(const std::string& key, double fallback) const;
  std::vector<double> list(const std::string& key, std::size_t size) const;
  const std::map<std::string, std::vector<double>>& entries() const { return values_; }

  void set(const std::string& key, double value) { values_[key] = {value}; }
  void set(const std::string& key, std::vector<double> value) { values_[key] = std::move(value); }
  /// Keys never read through the accessors.
  std::vector<std::string> unused_keys() const;

  /// Writes entries in insertion-independent (sorted) order with the
  /// shortest decimal form that parses back to the same double.
  std::string dump() const;

 private:
  std::map<std::string, std::vector<double>> values_;
  mutable std::map<std::string, bool> used_;
};

/// Shortest decimal representation that round-trips to `value`.
std::string format_shortest(double value);

/// Whole file contents; throws ParseError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace wbgen
