// Copyright 2026 The rnnprove Authors.
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

#include "rnnprove/common/text_format.hpp"

#include <yaml-cpp/yaml.h>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rnnprove/common/errors.hpp"

namespace rnnprove {

std::string format_real(double value) {
  if (!std::isfinite(value))
    throw FormatError("format_real: non-finite value cannot be serialized");
  // Shortest text that parses back to the same double.
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, r.ptr);
}

double parse_real(const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw FormatError("parse_real: not a finite real: '" + text + "'");
  return v;
}

YAML::Node real_sequence(std::span<const double> values) {
  YAML::Node node(YAML::NodeType::Sequence);
  node.SetStyle(YAML::EmitterStyle::Flow);
  for (double v : values) node.push_back(format_real(v));
  return node;
}

std::vector<double> read_real_sequence(const YAML::Node& node) {
  if (!node || !node.IsSequence())
    throw FormatError("expected a sequence of reals");
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& item : node) out.push_back(parse_real(item.as<std::string>()));
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write file: " + path);
  out << contents;
  if (!out) throw FormatError("write failed: " + path);
}

}  // namespace rnnprove
