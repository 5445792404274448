// src/geometry.cc

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

#include "arraybench/geometry.h"

#include <cmath>

namespace arraybench {

namespace {

double dist3(const Point3& a, const Point3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

Point3 ArrayGeometry::centroid() const {
  Point3 c{0.0, 0.0, 0.0};
  for (const auto& p : mic_positions)
    for (int k = 0; k < 3; ++k) c[k] += p[k];
  for (int k = 0; k < 3; ++k) c[k] /= static_cast<double>(mic_positions.size());
  return c;
}

double ArrayGeometry::max_pairwise_distance() const {
  double d = 0.0;
  for (const auto& [i, j] : pairs)
    d = std::max(d, dist3(mic_positions[i], mic_positions[j]));
  return d;
}

double ArrayGeometry::max_delay_samples() const {
  return max_pairwise_distance() / speed_of_sound * sample_rate;
}

ArrayGeometry make_array(std::vector<Point3> mic_positions, double sample_rate,
                         double speed_of_sound) {
  const int m = static_cast<int>(mic_positions.size());
  if (m < 2) fail("invalid-geometry", "need at least 2 microphones");
  if (sample_rate <= 0.0 || speed_of_sound <= 0.0)
    fail("invalid-geometry", "sample rate and speed of sound must be positive");

  ArrayGeometry g;
  g.mic_positions = std::move(mic_positions);
  g.sample_rate = sample_rate;
  g.speed_of_sound = speed_of_sound;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) g.pairs.emplace_back(i, j);
  for (const auto& [i, j] : g.pairs)
    if (dist3(g.mic_positions[i], g.mic_positions[j]) <= 0.0)
      fail("invalid-geometry", "coincident microphones");
  return g;
}

ArrayGeometry tetrahedral_array(double base_radius, double apex_height,
                                double sample_rate, double speed_of_sound) {
  if (base_radius <= 0.0 || apex_height <= 0.0)
    fail("invalid-geometry", "tetrahedral array dimensions must be positive");
  std::vector<Point3> mics;
  for (int k = 0; k < 3; ++k) {
    const double az = 2.0 * kPi * k / 3.0;
    mics.push_back({base_radius * std::cos(az), base_radius * std::sin(az), 0.0});
  }
  mics.push_back({0.0, 0.0, apex_height});
  return make_array(std::move(mics), sample_rate, speed_of_sound);
}

Point3 direction_to_unit(const Direction& d) {
  const double ce = std::cos(d.elevation);
  return {ce * std::cos(d.azimuth), ce * std::sin(d.azimuth), std::sin(d.elevation)};
}

std::vector<double> farfield_delays(const ArrayGeometry& g, const Direction& d) {
  const Point3 u = direction_to_unit(d);
  const Point3 c = g.centroid();
  std::vector<double> delays(g.num_mics());
  for (int m = 0; m < g.num_mics(); ++m) {
    const Point3& p = g.mic_positions[m];
    const double proj =
        (p[0] - c[0]) * u[0] + (p[1] - c[1]) * u[1] + (p[2] - c[2]) * u[2];
    delays[m] = -proj / g.speed_of_sound * g.sample_rate;
  }
  return delays;
}

double predicted_tdoa(const ArrayGeometry& g, const Direction& d, int pair_index) {
  const auto delays = farfield_delays(g, d);
  const auto& [i, j] = g.pairs.at(pair_index);
  return delays[j] - delays[i];
}

AngleEncoding angle_encode(const Direction& d) {
  return AngleEncoding{{std::cos(d.azimuth), std::sin(d.azimuth),
                        std::cos(d.elevation), std::sin(d.elevation)}};
}

Direction angle_decode(const AngleEncoding& e) {
  const double na = std::hypot(e.v[0], e.v[1]);
  const double ne = std::hypot(e.v[2], e.v[3]);
  if (na == 0.0 || ne == 0.0) fail("degenerate-encoding", "zero half-vector");
  Direction d;
  d.azimuth = std::atan2(e.v[1] / na, e.v[0] / na);
  d.elevation = std::atan2(e.v[3] / ne, e.v[2] / ne);
  return d;
}

nlohmann::ordered_json geometry_to_json(const ArrayGeometry& g) {
  nlohmann::ordered_json j;
  j["mics"] = g.mic_positions;
  j["fs"] = static_cast<int>(g.sample_rate);
  j["c"] = g.speed_of_sound;
  return j;
}

ArrayGeometry geometry_from_json(const nlohmann::json& j) {
  std::vector<Point3> mics;
  for (const auto& m : j.at("mics"))
    mics.push_back({m.at(0).get<double>(), m.at(1).get<double>(), m.at(2).get<double>()});
  return make_array(std::move(mics), j.at("fs").get<double>(), j.at("c").get<double>());
}

}  // namespace arraybench
