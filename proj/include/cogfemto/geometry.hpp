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

#ifndef COGFEMTO_GEOMETRY_HPP
#define COGFEMTO_GEOMETRY_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cogfemto {

class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// A point of the cell together with the femtocell it lies in, if any.
struct Position {
  double x = 0.0;
  double y = 0.0;
  std::optional<std::size_t> indoor_cell;

  Point point() const { return {x, y}; }
  bool indoor() const { return indoor_cell.has_value(); }

  friend bool operator==(const Position&, const Position&) = default;
};

/// Parameters of the single-macrocell layout. Distances in meters.
struct LayoutParams {
  std::size_t femto_grid_order = 25;      // F, so F*F femtocells
  double cell_side = 1000.0;              // L
  double femto_radius = 10.0;             // r_fc
  double pathloss_3db_distance = 50.0;    // delta
  double pathloss_exponent = 3.5;         // alpha
  double wall_loss_db = 5.0;              // w, as a loss in dB

  friend bool operator==(const LayoutParams&, const LayoutParams&) = default;
};

/// Square cell on a torus with an F x F grid of disk-shaped femtocells and
/// the macro base station at the origin. Immutable once built.
class Layout {
 public:
  /// Throws LayoutError on non-positive parameters or overlapping disks.
  static Layout build(const LayoutParams& params);

  const LayoutParams& params() const noexcept { return params_; }
  double cell_side() const noexcept { return params_.cell_side; }
  double femto_radius() const noexcept { return params_.femto_radius; }
  std::size_t grid_order() const noexcept { return params_.femto_grid_order; }
  std::size_t femto_count() const noexcept { return centers_.size(); }
  const std::vector<Point>& femto_centers() const noexcept { return centers_; }

  /// Linear wall attenuation factor, 10^(-w/10).
  double wall_factor() const noexcept { return wall_factor_; }

  /// Wraps (x, y) into [-L/2, L/2)^2 and tags the femtocell containing it.
  /// Disk boundaries count as indoor.
  Position locate(double x, double y) const;

  /// Femto-BS position: the center of femtocell f, tagged indoor.
  Position femto_bs(std::size_t f) const;
  /// Macro-BS position: the origin, always treated as outdoor.
  static Position macro_bs() { return {0.0, 0.0, std::nullopt}; }

 private:
  Layout(LayoutParams params, std::vector<Point> centers);

  LayoutParams params_;
  std::vector<Point> centers_;
  double wall_factor_ = 1.0;
};

/// Center of femtocell (i, j) for an F x F grid over a cell of side L.
Point femto_center(std::size_t i, std::size_t j, std::size_t order, double side);

/// Distance on the torus of side `side`: the minimum over integer shifts of
/// the Euclidean distance. Result lies in [0, side / sqrt(2)].
double torus_distance(const Point& a, const Point& b, double side);
inline double torus_distance(const Position& a, const Position& b, double side) {
  return torus_distance(a.point(), b.point(), side);
}

/// Walls crossed between two tagged positions: 0 if both outdoor or in the
/// same femtocell, 1 if exactly one is indoor, 2 if in different femtocells.
int wall_count(const Position& a, const Position& b);

/// Distance part of the pathloss, 1 / (1 + (d/delta)^alpha).
double distance_gain(double distance, double delta, double alpha);

/// Large-scale power gain g(a, b) = w^n(a,b) / (1 + (d(a,b)/delta)^alpha),
/// with w the linear wall attenuation. Lies in (0, 1].
double pathloss(const Position& a, const Position& b, const Layout& layout);

}  // namespace cogfemto

#endif  // COGFEMTO_GEOMETRY_HPP
