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

#include "rnnprove/feasibility/dataset.hpp"

#include <sstream>

#include "rnnprove/common/digest.hpp"
#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/text_format.hpp"

namespace rnnprove::feas {

const char* source_name(PairSource source) {
  switch (source) {
    case PairSource::kRecorded: return "recorded";
    case PairSource::kMismatched: return "mismatched";
    case PairSource::kUniformNegative: return "uniform-negative";
    case PairSource::kExact: return "exact";
  }
  return "unknown";
}

PairSource parse_source(const std::string& name) {
  for (auto s : {PairSource::kRecorded, PairSource::kMismatched, PairSource::kUniformNegative,
                 PairSource::kExact})
    if (name == source_name(s)) return s;
  throw FormatError("dataset: unknown source '" + name + "'");
}

std::size_t FeasibilityDataset::count(int label) const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.label == label;
  return n;
}

void FeasibilityDataset::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].state.size() != state_dim || rows[i].hidden.size() != hidden_dim)
      throw DimensionError("dataset row " + std::to_string(i) + " has the wrong width");
    if (rows[i].label != 0 && rows[i].label != 1)
      throw InvalidArgument("dataset row " + std::to_string(i) + " has a non-binary label");
  }
}

std::string dataset_csv(const FeasibilityDataset& d) {
  d.validate();
  std::string out;
  for (std::size_t i = 0; i < d.state_dim; ++i) out += "s" + std::to_string(i) + ",";
  for (std::size_t i = 0; i < d.hidden_dim; ++i) out += "h" + std::to_string(i) + ",";
  out += "label,source\n";
  for (const auto& r : d.rows) {
    for (double v : r.state) out += format_real(v) + ",";
    for (double v : r.hidden) out += format_real(v) + ",";
    out += std::to_string(r.label) + "," + source_name(r.source) + "\n";
  }
  return out;
}

FeasibilityDataset parse_dataset_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  // Leading '#' lines carry provenance metadata.
  do {
    if (!std::getline(in, line)) throw FormatError("dataset: empty file");
    ++line_no;
  } while (!line.empty() && line[0] == '#');
  FeasibilityDataset d;
  {
    std::istringstream header(line);
    std::string col;
    std::vector<std::string> cols;
    while (std::getline(header, col, ',')) cols.push_back(col);
    if (cols.size() < 2 || cols[cols.size() - 2] != "label" || cols.back() != "source")
      throw FormatError("dataset: header must end with label,source");
    for (std::size_t i = 0; i + 2 < cols.size(); ++i) {
      if (cols[i].empty()) throw FormatError("dataset: empty column name");
      if (cols[i][0] == 's' && d.hidden_dim == 0)
        ++d.state_dim;
      else if (cols[i][0] == 'h')
        ++d.hidden_dim;
      else
        throw FormatError("dataset: unexpected column '" + cols[i] + "'");
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != d.state_dim + d.hidden_dim + 2)
      throw FormatError("dataset: line " + std::to_string(line_no) + " has wrong column count");
    FeasiblePair p;
    for (std::size_t i = 0; i < d.state_dim; ++i) p.state.push_back(parse_real(cells[i]));
    for (std::size_t i = 0; i < d.hidden_dim; ++i)
      p.hidden.push_back(parse_real(cells[d.state_dim + i]));
    const std::string& label = cells[cells.size() - 2];
    if (label != "0" && label != "1")
      throw FormatError("dataset: line " + std::to_string(line_no) + " label must be 0 or 1");
    p.label = label == "1";
    p.source = parse_source(cells.back());
    d.rows.push_back(std::move(p));
  }
  return d;
}

std::uint64_t row_hash(const FeasiblePair& row) {
  std::string bytes;
  for (double v : row.state) bytes += format_real(v) + ",";
  bytes += "|";
  for (double v : row.hidden) bytes += format_real(v) + ",";
  bytes += std::to_string(row.label);
  return fnv1a64(bytes);
}

}  // namespace rnnprove::feas
