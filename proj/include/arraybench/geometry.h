// include/arraybench/geometry.h

// Copyright 2026  arraybench authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ARRAYBENCH_GEOMETRY_H_
#define ARRAYBENCH_GEOMETRY_H_

#include <array>
#include <utility>
#include <vector>

#include "arraybench/common.h"
#include "json.hpp"

namespace arraybench {

using Point3 = std::array<double, 3>;

// Source bearing relative to the array. Azimuth in (-pi, pi] measured from
// +x toward +y; elevation in [-pi/2, pi/2], positive up.
struct Direction {
  double azimuth = 0.0;
  double elevation = 0.0;
};

// Wrap-free angle target: [cos az, sin az, cos el, sin el].
struct AngleEncoding {
  std::array<double, 4> v{};
};

// Immutable after construction; shared freely across workers.
struct ArrayGeometry {
  std::vector<Point3> mic_positions;         // meters, relative to base-circle center
  std::vector<std::pair<int, int>> pairs;    // unique (i, j), i < j, lexicographic
  double sample_rate = 16000.0;
  double speed_of_sound = 343.0;

  int num_mics() const { return static_cast<int>(mic_positions.size()); }
  Point3 centroid() const;
  double max_pairwise_distance() const;
  // Largest physically possible inter-mic delay, in samples.
  double max_delay_samples() const;
};

// Generic construction: validates mic count, distinct positions, pair order.
ArrayGeometry make_array(std::vector<Point3> mic_positions, double sample_rate,
                         double speed_of_sound);

// Three mics at azimuths 0/120/240 degrees on a base circle at z=0 plus one
// apex mic at (0, 0, apex_height). Coordinates relative to the circle center.
ArrayGeometry tetrahedral_array(double base_radius, double apex_height,
                                double sample_rate, double speed_of_sound = 343.0);

// Unit propagation vector pointing from the array toward the source.
Point3 direction_to_unit(const Direction& d);

// Far-field arrival offsets in samples, referenced to the array centroid.
// A mic closer to the source along the propagation axis gets a negative
// (earlier) delay. delay_m = -(r_m . u) / c * fs.
std::vector<double> farfield_delays(const ArrayGeometry& g, const Direction& d);

// Predicted TDOA for pair p under the far-field model: delay_j - delay_i,
// i.e. tau_ij = (r_i - r_j) . u / c * fs. Matches the gcc_phat lag convention.
double predicted_tdoa(const ArrayGeometry& g, const Direction& d, int pair_index);

AngleEncoding angle_encode(const Direction& d);
// Normalizes each 2-vector half before atan2; zero half -> degenerate-encoding.
Direction angle_decode(const AngleEncoding& e);

nlohmann::ordered_json geometry_to_json(const ArrayGeometry& g);
ArrayGeometry geometry_from_json(const nlohmann::json& j);

}  // namespace arraybench

#endif  // ARRAYBENCH_GEOMETRY_H_
