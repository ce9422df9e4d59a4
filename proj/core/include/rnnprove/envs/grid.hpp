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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rnnprove::env {

struct Cell {
  int x = 0;  // column, 0 = left
  int y = 0;  // row, 0 = top
  auto operator<=>(const Cell&) const = default;
};

enum class Direction : std::uint8_t { kUp = 0, kRight = 1, kDown = 2, kLeft = 3 };
Cell neighbor(Cell c, Direction d);

// Static obstacle layout for the navigation task.
struct GridSpec {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> obstacles;  // row-major, 1 = obstacle
  Cell start;
  Cell goal;
  std::uint64_t seed = 0;

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }
  std::size_t index(Cell c) const { return static_cast<std::size_t>(c.y * width + c.x); }
  Cell cell(std::size_t index) const {
    return {static_cast<int>(index % width), static_cast<int>(index / width)};
  }
  bool is_obstacle(Cell c) const { return obstacles[index(c)] != 0; }
  std::size_t cell_count() const { return static_cast<std::size_t>(width * height); }
  std::size_t obstacle_count() const;

  bool operator==(const GridSpec&) const = default;
};

// Obstacle-free grid, start top-left, goal bottom-right.
GridSpec make_empty_grid(int width, int height);

// round(0.2 * width * height) obstacles placed uniformly at random, never on
// start/goal, resampled until a start->goal path exists. Throws
// ConstructionFailure after 10,000 unsuccessful draws.
GridSpec generate_grid(int width, int height, std::uint64_t seed);
std::size_t nav_obstacle_count(int width, int height);

// Breadth-first distances over obstacle-free cells; -1 = unreachable.
std::vector<int> bfs_distances(const GridSpec& spec, Cell from);
bool has_path(const GridSpec& spec);

// Plain-text map: a header line, "seed <n>", "size <w> <h>", then one row
// per line with '.' free, '#' obstacle, 'S' start, 'G' goal.
std::string serialize_grid(const GridSpec& spec);
GridSpec parse_grid(const std::string& text);

}  // namespace rnnprove::env
