// Copyright 2026 The cogfemto Authors
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

#include "cogfemto/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <fmt/format.h>

namespace cogfemto {

namespace {

// Shortest signed offset on a circle of circumference `side`.
double wrap_delta(double d, double side) {
  d = std::fabs(d);
  d = std::fmod(d, side);
  return std::min(d, side - d);
}

double wrap_coordinate(double v, double side) {
  const double half = 0.5 * side;
  double w = std::fmod(v + half, side);
  if (w < 0.0) w += side;
  w -= half;
  // fmod can land exactly on +half after rounding.
  return w >= half ? -half : w;
}

}  // namespace

Point femto_center(std::size_t i, std::size_t j, std::size_t order, double side) {
  const double f = static_cast<double>(order);
  const auto coord = [&](std::size_t idx) {
    return (2.0 * static_cast<double>(idx) - f + 1.0) / (2.0 * f) * side;
  };
  return {coord(i), coord(j)};
}

Layout::Layout(LayoutParams params, std::vector<Point> centers)
    : params_(params),
      centers_(std::move(centers)),
      wall_factor_(std::pow(10.0, -params.wall_loss_db / 10.0)) {}

Layout Layout::build(const LayoutParams& p) {
  if (!(p.cell_side > 0.0)) throw LayoutError("cell_side must be positive");
  if (!(p.femto_radius > 0.0)) throw LayoutError("femto_radius must be positive");
  if (!(p.pathloss_3db_distance > 0.0)) {
    throw LayoutError("pathloss_3db_distance must be positive");
  }
  if (!(p.pathloss_exponent > 0.0)) throw LayoutError("pathloss_exponent must be positive");
  if (!(p.wall_loss_db >= 0.0)) throw LayoutError("wall_loss_db must be non-negative");

  const std::size_t order = p.femto_grid_order;
  if (order > 0) {
    const double spacing = p.cell_side / static_cast<double>(order);
    if (!(2.0 * p.femto_radius < spacing)) {
      throw LayoutError(fmt::format(
          "femtocell disks overlap: 2 * radius {} m >= grid spacing {} m",
          p.femto_radius, spacing));
    }
  }

  std::vector<Point> centers;
  centers.reserve(order * order);
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j)
      centers.push_back(femto_center(i, j, order, p.cell_side));
  return Layout(p, std::move(centers));
}

Position Layout::locate(double x, double y) const {
  const double side = params_.cell_side;
  Position pos{wrap_coordinate(x, side), wrap_coordinate(y, side), std::nullopt};
  const std::size_t order = params_.femto_grid_order;
  if (order == 0) return pos;

  // Each disk sits strictly inside its own grid square, so only the square
  // containing the point can hold it.
  const auto cell_index = [&](double v) {
    const double t = (v / side + 0.5) * static_cast<double>(order);
    const auto idx = static_cast<std::ptrdiff_t>(std::floor(t));
    return static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(order) - 1));
  };
  const std::size_t i = cell_index(pos.x);
  const std::size_t j = cell_index(pos.y);
  const std::size_t f = i * order + j;
  if (torus_distance(pos.point(), centers_[f], side) <= params_.femto_radius) {
    pos.indoor_cell = f;
  }
  return pos;
}

Position Layout::femto_bs(std::size_t f) const {
  const Point& c = centers_.at(f);
  return {c.x, c.y, f};
}

double torus_distance(const Point& a, const Point& b, double side) {
  const double dx = wrap_delta(a.x - b.x, side);
  const double dy = wrap_delta(a.y - b.y, side);
  return std::hypot(dx, dy);
}

int wall_count(const Position& a, const Position& b) {
  if (a.indoor_cell && b.indoor_cell) return *a.indoor_cell == *b.indoor_cell ? 0 : 2;
  return (a.indoor_cell || b.indoor_cell) ? 1 : 0;
}

double distance_gain(double distance, double delta, double alpha) {
  return 1.0 / (1.0 + std::pow(distance / delta, alpha));
}

double pathloss(const Position& a, const Position& b, const Layout& layout) {
  const auto& p = layout.params();
  const double d = torus_distance(a, b, p.cell_side);
  const int walls = wall_count(a, b);
  double w = 1.0;
  for (int n = 0; n < walls; ++n) w *= layout.wall_factor();
  return w * distance_gain(d, p.pathloss_3db_distance, p.pathloss_exponent);
}

}  // namespace cogfemto
