// tests/test_roomsim.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "arraybench/geometry.h"
#include "arraybench/room_sim.h"
#include "arraybench/synth_source.h"

using namespace arraybench;

namespace {

bool throws_kind(const std::function<void()>& fn, const std::string& kind) {
  try {
    fn();
  } catch (const Error& e) {
    return std::string(e.what()).rfind(kind + ":", 0) == 0;
  }
  return false;
}

RoomSpec basic_room(double rt60, double tail_factor = 1.5) {
  RoomSpec room;
  room.dimensions = {6.0, 5.0, 3.0};
  room.rt60 = rt60;
  room.sample_rate = 16000.0;
  room.max_image_order = image_order_for(room, tail_factor * rt60);
  return room;
}

}  // namespace

TEST_CASE("sabine inversion matches hand arithmetic") {
  // 5 x 5 x 4 room: V = 100 m^3, S = 2(25 + 20 + 20) = 130 m^2.
  RoomSpec room;
  room.dimensions = {5.0, 5.0, 4.0};
  room.rt60 = 0.4;
  const auto r = rt60_to_absorption(room);
  // alpha = 0.161 * 100 / (0.4 * 130) = 0.309615...
  CHECK(r.absorption == doctest::Approx(0.3096).epsilon(1e-3));
  CHECK(r.required_order >= 1);
}

TEST_CASE("absorption vanishes in the long-reverberation limit") {
  RoomSpec room;
  room.dimensions = {5.0, 5.0, 4.0};
  room.rt60 = 100.0;
  CHECK(rt60_to_absorption(room).absorption < 0.005);
}

TEST_CASE("impossible rt60 raises infeasible-rt60") {
  RoomSpec room;
  room.dimensions = {10.0, 8.0, 3.5};
  room.rt60 = 0.05;
  CHECK(throws_kind([&] { rt60_to_absorption(room); }, "infeasible-rt60"));
}

TEST_CASE("eyring absorption stays below one and above sabine-limit behavior") {
  RoomSpec room;
  room.dimensions = {10.0, 8.0, 3.5};
  room.rt60 = 0.05;  // sabine would be infeasible here
  const double a = eyring_absorption(room);
  CHECK(a > 0.9);
  CHECK(a < 1.0);
}

TEST_CASE("anechoic direct path lands at the Euclidean prediction") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  RoomSpec room = basic_room(0.4);
  room.max_image_order = 0;

  const Point3 center{2.0, 2.5, 1.4};
  // Distances chosen to land exactly on the sample grid: 46 and 92 samples.
  const double d1 = 46.0 * 343.0 / 16000.0;
  const double d2 = 92.0 * 343.0 / 16000.0;
  SimOptions opts;
  opts.highpass = false;  // keep raw pulses for exact amplitude ratios

  SourcePlacement near_src;
  near_src.position = {center[0] + 0.05 + d1, center[1], center[2]};  // 1 m from mic 0
  const Rir rir1 = simulate_rir(room, near_src, g, center, opts);

  SourcePlacement far_src;
  far_src.position = {center[0] + 0.05 + d2, center[1], center[2]};
  const Rir rir2 = simulate_rir(room, far_src, g, center, opts);

  // mic 0 sits at +x, so the wave arrives there first, exactly on-grid
  CHECK(rir1.direct_path_sample[0] == doctest::Approx(46.0).epsilon(1e-9));
  CHECK(direct_path_arrival(rir1.taps[0]) == doctest::Approx(46.0).epsilon(0.02));
  CHECK(direct_path_arrival(rir2.taps[0]) == doctest::Approx(92.0).epsilon(0.02));

  // 1 m at 16 kHz: 1.0 / 343 * 16000 = 46.64 samples for the nominal example
  CHECK(d1 == doctest::Approx(0.98612).epsilon(1e-4));

  // free-field amplitude scales as 1/d: on-grid peaks double when d halves
  const double a1 = rir1.taps[0][46];
  const double a2 = rir2.taps[0][92];
  CHECK(a1 / a2 == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(a1 == doctest::Approx(1.0 / (4.0 * kPi * d1)).epsilon(1e-6));
}

TEST_CASE("equidistant mics receive identical anechoic RIRs") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  RoomSpec room = basic_room(0.4);
  room.max_image_order = 0;
  const Point3 center{3.0, 2.5, 1.4};
  SourcePlacement src;
  src.position = {center[0], center[1], center[2] + 1.2};  // on the base-circle axis
  const Rir rir = simulate_rir(room, src, g, center);
  // the three base mics are equidistant from an on-axis source
  for (size_t i = 0; i < rir.taps[0].size(); ++i) {
    CHECK(std::abs(rir.taps[0][i] - rir.taps[1][i]) < 1e-9);
    CHECK(std::abs(rir.taps[0][i] - rir.taps[2][i]) < 1e-9);
  }
}

TEST_CASE("schroeder T60 tracks the request at order 20") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  RoomSpec room = basic_room(0.4);
  room.max_image_order = 20;
  SourcePlacement src;
  src.position = {4.2, 3.1, 1.6};
  const Rir rir = simulate_rir(room, src, g, {2.0, 2.0, 1.3});
  const double t60 = estimate_rt60_schroeder(rir.taps[0], 16000.0);
  CHECK(t60 > 0.4 * 0.7);
  CHECK(t60 < 0.4 * 1.3);
}

TEST_CASE("schroeder curve is monotone non-increasing") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  RoomSpec room = basic_room(0.3);
  SourcePlacement src;
  src.position = {4.0, 3.0, 1.5};
  const Rir rir = simulate_rir(room, src, g, {2.0, 2.0, 1.3});
  const auto edc = schroeder_curve_db(rir.taps[2]);
  for (size_t i = 1; i < edc.size(); ++i) CHECK(edc[i] <= edc[i - 1] + 1e-12);
}

TEST_CASE("source outside the room is rejected") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  const RoomSpec room = basic_room(0.4);
  SourcePlacement src;
  src.position = {7.0, 2.0, 1.5};  // x beyond the 6 m wall
  CHECK(throws_kind([&] { simulate_rir(room, src, g, {2.0, 2.0, 1.3}); }, "placement"));
}

TEST_CASE("scene sampling is deterministic in the seed") {
  const SceneSample a = sample_scene(uint64_t{0});
  const SceneSample b = sample_scene(uint64_t{0});
  CHECK(a.room.dimensions == b.room.dimensions);
  CHECK(a.room.rt60 == b.room.rt60);
  CHECK(a.target.position == b.target.position);
  CHECK(a.interferer.position == b.interferer.position);
  CHECK(a.array_center == b.array_center);

  const SceneSample c = sample_scene(uint64_t{1});
  CHECK(a.room.rt60 != c.room.rt60);
}

TEST_CASE("scene sampling respects every distribution bound") {
  double dist_sum = 0.0;
  double rt_sum = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const SceneSample s = sample_scene(static_cast<uint64_t>(i));
    const auto& dims = s.room.dimensions;
    CHECK(dims[0] >= 4.0);
    CHECK(dims[0] <= 10.0);
    CHECK(dims[1] >= 3.5);
    CHECK(dims[1] <= 8.0);
    CHECK(dims[2] >= 2.5);
    CHECK(dims[2] <= 3.5);
    CHECK(s.room.rt60 >= 0.19);
    CHECK(s.room.rt60 <= 0.82);

    const double az = s.target.direction_from_array.azimuth;
    const double el = s.target.direction_from_array.elevation;
    CHECK(std::abs(az) <= kPi / 4.0 + 1e-12);
    CHECK(std::abs(el) <= kPi / 9.0 + 1e-12);
    CHECK(s.target.distance >= 0.8);
    CHECK(s.target.distance <= 1.5);

    for (int k = 0; k < 3; ++k) {
      CHECK(s.target.position[k] > 0.0);
      CHECK(s.target.position[k] < dims[k]);
      CHECK(s.interferer.position[k] > 0.0);
      CHECK(s.interferer.position[k] < dims[k]);
      CHECK(s.array_center[k] >= 0.5 - 1e-12);
      CHECK(s.array_center[k] <= dims[k] - 0.5 + 1e-12);
    }

    auto d3 = [](const Point3& a, const Point3& b) {
      return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                       (a[2] - b[2]) * (a[2] - b[2]));
    };
    CHECK(d3(s.interferer.position, s.array_center) >= 0.5 - 1e-12);
    CHECK(d3(s.interferer.position, s.target.position) >= 0.5 - 1e-12);

    dist_sum += s.target.distance;
    rt_sum += s.room.rt60;
  }
  // distribution targets: distance mean 1.15 m, rt60 mean 0.38 s
  CHECK(dist_sum / n > 1.05);
  CHECK(dist_sum / n < 1.25);
  CHECK(rt_sum / n > 0.34);
  CHECK(rt_sum / n < 0.42);
}

TEST_CASE("mix_at_snr hits the requested ratio exactly") {
  Rng src_rng(99);
  const Waveform t = synth_speech_like(src_rng, 1.0, 16000.0);
  Waveform u(t.rbegin(), t.rend());  // equal-energy interferer

  MultichannelWaveform target{t, t};
  MultichannelWaveform interf{u, u};

  SUBCASE("equal power at 0 dB leaves the interferer unscaled") {
    Rng rng(1);
    const SceneRecording rec =
        mix_at_snr(target, interf, 0.0, -std::numeric_limits<double>::infinity(), rng);
    for (size_t i = 0; i < u.size(); i += 97)
      CHECK(rec.interferer_scaled[0][i] == doctest::Approx(u[i]).epsilon(1e-9));
  }

  SUBCASE("+10 dB puts the interferer exactly 10 dB down on channel 0") {
    Rng rng(1);
    const SceneRecording rec =
        mix_at_snr(target, interf, 10.0, -std::numeric_limits<double>::infinity(), rng);
    const double measured =
        db10(energy(rec.target_reverberant[0]) / energy(rec.interferer_scaled[0]));
    CHECK(std::abs(measured - 10.0) < 1e-6);
  }

  SUBCASE("component decomposition is bit-exact when noise is disabled") {
    Rng rng(1);
    const SceneRecording rec =
        mix_at_snr(target, interf, 4.2, -std::numeric_limits<double>::infinity(), rng);
    for (size_t i = 0; i < t.size(); i += 53) {
      // recomputing the stored sum reproduces the mixture bit for bit
      const double recomputed = rec.target_reverberant[0][i] + rec.interferer_scaled[0][i];
      CHECK(rec.mixture[0][i] == recomputed);
    }
  }

  SUBCASE("sensor noise level follows the floor setting") {
    Rng rng(7);
    const SceneRecording rec = mix_at_snr(target, interf, 0.0, -50.0, rng);
    double noise_energy = 0.0, premix_energy = 0.0;
    for (int c = 0; c < 2; ++c) {
      for (size_t i = 0; i < t.size(); ++i) {
        const double premix = rec.target_reverberant[c][i] + rec.interferer_scaled[c][i];
        const double noise = rec.mixture[c][i] - premix;
        noise_energy += noise * noise;
        premix_energy += premix * premix;
      }
    }
    CHECK(db10(noise_energy / premix_energy) == doctest::Approx(-50.0).epsilon(0.02));
  }
}

TEST_CASE("degenerate sources are rejected") {
  MultichannelWaveform silent{Waveform(1000, 0.0)};
  MultichannelWaveform live{Waveform(1000, 0.1)};
  Rng rng(1);
  CHECK(throws_kind([&] { mix_at_snr(silent, live, 0.0, -50.0, rng); }, "degenerate-source"));
  CHECK(throws_kind([&] { mix_at_snr(live, silent, 0.0, -50.0, rng); }, "degenerate-source"));
}

TEST_CASE("mixing with infinite SNR reproduces the reverberant target exactly") {
  Rng src_rng(123);
  const Waveform target_src = synth_speech_like(src_rng, 1.0, 16000.0);
  const Waveform interf_src = synth_speech_like(src_rng, 1.0, 16000.0);
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  Rng scene_rng(5);
  SceneSample scene = sample_scene(scene_rng);

  Rng mix_rng(9);
  const SceneRecording rec =
      render_scene(scene, g, target_src, interf_src, std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity(), mix_rng);
  for (int c = 0; c < 4; ++c)
    for (size_t i = 0; i < rec.mixture[c].size(); i += 211)
      CHECK(rec.mixture[c][i] == rec.target_reverberant[c][i]);
  CHECK(rec.clean_reference == rec.target_reverberant[0]);
}

TEST_CASE("direct-path TDOAs from RIR peaks match the far-field model") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  int checked = 0;
  for (uint64_t seed = 0; checked < 12 && seed < 100; ++seed) {
    Rng rng(seed);
    SceneSample scene = sample_scene(rng);
    if (scene.target.distance < 1.0) continue;
    scene.room.max_image_order = 0;  // isolate the direct path
    const Rir rir = simulate_rir(scene.room, scene.target, g, scene.array_center);
    std::vector<double> arrival(4);
    for (int m = 0; m < 4; ++m) arrival[m] = direct_path_arrival(rir.taps[m]);
    for (size_t p = 0; p < g.pairs.size(); ++p) {
      const auto& [i, j] = g.pairs[p];
      const double measured = arrival[j] - arrival[i];
      const double predicted = predicted_tdoa(g, scene.target.direction_from_array, p);
      CHECK(std::abs(measured - predicted) < 0.6);
    }
    ++checked;
  }
  CHECK(checked == 12);
}
