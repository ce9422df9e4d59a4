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

#pragma once

#include <span>
#include <string>
#include <vector>

namespace YAML {
class Node;
}

namespace rnnprove {

// Shortest decimal that parses back to the same double.
std::string format_real(double value);
double parse_real(const std::string& text);

// Helpers for the self-describing hierarchical text format (YAML subset)
// used by checkpoints and run configs. Reals are stored as plain scalars
// in shortest round-trip form so that files round-trip bitwise.
YAML::Node real_sequence(std::span<const double> values);
std::vector<double> read_real_sequence(const YAML::Node& node);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace rnnprove
