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

#include "rnnprove/envs/grid.hpp"

#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "rnnprove/common/errors.hpp"
#include "rnnprove/common/rng.hpp"

namespace rnnprove::env {

Cell neighbor(Cell c, Direction d) {
  switch (d) {
    case Direction::kUp: return {c.x, c.y - 1};
    case Direction::kRight: return {c.x + 1, c.y};
    case Direction::kDown: return {c.x, c.y + 1};
    case Direction::kLeft: return {c.x - 1, c.y};
  }
  return c;
}

std::size_t GridSpec::obstacle_count() const {
  return static_cast<std::size_t>(std::accumulate(obstacles.begin(), obstacles.end(), 0));
}

GridSpec make_empty_grid(int width, int height) {
  if (width < 1 || height < 1) throw InvalidArgument("grid dimensions must be positive");
  GridSpec g;
  g.width = width;
  g.height = height;
  g.obstacles.assign(static_cast<std::size_t>(width * height), 0);
  g.start = {0, 0};
  g.goal = {width - 1, height - 1};
  return g;
}

std::size_t nav_obstacle_count(int width, int height) {
  return static_cast<std::size_t>(std::lround(0.2 * width * height));
}

std::vector<int> bfs_distances(const GridSpec& spec, Cell from) {
  std::vector<int> dist(spec.cell_count(), -1);
  if (!spec.in_bounds(from) || spec.is_obstacle(from)) return dist;
  std::deque<Cell> queue{from};
  dist[spec.index(from)] = 0;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (int d = 0; d < 4; ++d) {
      const Cell n = neighbor(c, static_cast<Direction>(d));
      if (!spec.in_bounds(n) || spec.is_obstacle(n) || dist[spec.index(n)] >= 0) continue;
      dist[spec.index(n)] = dist[spec.index(c)] + 1;
      queue.push_back(n);
    }
  }
  return dist;
}

bool has_path(const GridSpec& spec) {
  return bfs_distances(spec, spec.start)[spec.index(spec.goal)] >= 0;
}

GridSpec generate_grid(int width, int height, std::uint64_t seed) {
  if (width < 3 || height < 3) throw InvalidArgument("grid width and height must be >= 3");
  GridSpec g = make_empty_grid(width, height);
  g.seed = seed;
  const std::size_t count = nav_obstacle_count(width, height);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const Cell c = g.cell(i);
    if (c != g.start && c != g.goal) candidates.push_back(i);
  }
  if (count > candidates.size()) throw ConstructionFailure("too many obstacles for grid");
  constexpr int kMaxAttempts = 10000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<std::size_t> pool = candidates;
    std::fill(g.obstacles.begin(), g.obstacles.end(), 0);
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t j = k + rng.below(pool.size() - k);
      std::swap(pool[k], pool[j]);
      g.obstacles[pool[k]] = 1;
    }
    if (has_path(g)) return g;
  }
  throw ConstructionFailure("no solvable obstacle layout found after 10000 draws for " +
                            std::to_string(width) + "x" + std::to_string(height));
}

std::string serialize_grid(const GridSpec& spec) {
  std::ostringstream out;
  out << "rnnprove-grid 1\n";
  out << "seed " << spec.seed << "\n";
  out << "size " << spec.width << " " << spec.height << "\n";
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const Cell c{x, y};
      char ch = spec.is_obstacle(c) ? '#' : '.';
      if (c == spec.start) ch = 'S';
      if (c == spec.goal) ch = 'G';
      out << ch;
    }
    out << "\n";
  }
  return out.str();
}

GridSpec parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "rnnprove-grid" || version != 1)
    throw FormatError("grid: missing 'rnnprove-grid 1' header");
  std::string key;
  GridSpec g;
  if (!(in >> key >> g.seed) || key != "seed") throw FormatError("grid: expected 'seed <n>'");
  if (!(in >> key >> g.width >> g.height) || key != "size" || g.width < 1 || g.height < 1)
    throw FormatError("grid: expected 'size <w> <h>'");
  g.obstacles.assign(g.cell_count(), 0);
  bool have_start = false;
  bool have_goal = false;
  for (int y = 0; y < g.height; ++y) {
    std::string row;
    if (!(in >> row) || static_cast<int>(row.size()) != g.width)
      throw FormatError("grid: row " + std::to_string(y) + " has wrong length");
    for (int x = 0; x < g.width; ++x) {
      const Cell c{x, y};
      switch (row[static_cast<std::size_t>(x)]) {
        case '.': break;
        case '#': g.obstacles[g.index(c)] = 1; break;
        case 'S': g.start = c; have_start = true; break;
        case 'G': g.goal = c; have_goal = true; break;
        default: throw FormatError(std::string("grid: unknown cell character '") + row[x] + "'");
      }
    }
  }
  if (!have_start || !have_goal) throw FormatError("grid: map needs exactly one S and one G");
  return g;
}

}  // namespace rnnprove::env
