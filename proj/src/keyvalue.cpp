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

#include "wbgen/keyvalue.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wbgen/errors.hpp"

namespace wbgen {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& token, int line) {
  const std::string t = trim(token);
  if (t.empty()) throw ParseError("line " + std::to_string(line) + ": empty value");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + t + "'");
  }
  return v;
}

}  // namespace

std::string format_shortest(double value) {
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

KeyValueFile KeyValueFile::parse(const std::string& text) {
  KeyValueFile out;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty key");
    if (out.values_.count(key)) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    std::vector<double> numbers;
    if (!value.empty() && value.front() == '[') {
      if (value.back() != ']') {
        throw ParseError("line " + std::to_string(line_no) + ": unterminated list");
      }
      std::istringstream items(value.substr(1, value.size() - 2));
      std::string item;
      while (std::getline(items, item, ',')) numbers.push_back(parse_number(item, line_no));
    } else {
      numbers.push_back(parse_number(value, line_no));
    }
    out.values_[key] = std::move(numbers);
  }
  return out;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

double KeyValueFile::scalar(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InvariantViolation(key, "missing");
  if (it->second.size() != 1) throw InvariantViolation(key, "expected a scalar");
  used_[key] = true;
  return it->second.front();
}

double KeyValueFile::scalar_or(const std::string& key, double fallback) const {
  return has(key) ? scalar(key) : fallback;
}

std::vector<double> KeyValueFile::list(const std::string& key, std::size_t size) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InvariantViolation(key, "missing");
  if (it->second.size() != size) {
    throw InvariantViolation(key, "expected " + std::to_string(size) + " values");
  }
  used_[key] = true;
  return it->second;
}

std::vector<std::string> KeyValueFile::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) {
    if (!used_.count(key)) out.push_back(key);
  }
  return out;
}

std::string KeyValueFile::dump() const {
  std::string out;
  for (const auto& [key, value] : values_) {
    out += key + " = ";
    if (value.size() == 1) {
      out += format_shortest(value.front());
    } else {
      out += "[";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) out += ", ";
        out += format_shortest(value[i]);
      }
      out += "]";
    }
    out += "\n";
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wbgen
