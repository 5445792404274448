// include/arraybench/room_sim.h

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

#ifndef ARRAYBENCH_ROOM_SIM_H_
#define ARRAYBENCH_ROOM_SIM_H_

#include <cstdint>
#include <vector>

#include "arraybench/common.h"
#include "arraybench/geometry.h"
#include "arraybench/rng.h"

namespace arraybench {

struct RoomSpec {
  Point3 dimensions{6.0, 5.0, 3.0};  // Lx, Ly, Lz in meters
  double rt60 = 0.4;                 // seconds
  int max_image_order = 0;
  double sample_rate = 16000.0;

  double volume() const {
    return dimensions[0] * dimensions[1] * dimensions[2];
  }
  double surface_area() const {
    const auto& d = dimensions;
    return 2.0 * (d[0] * d[1] + d[0] * d[2] + d[1] * d[2]);
  }
};

struct SourcePlacement {
  enum class Role { kTarget, kInterferer };
  Point3 position{0.0, 0.0, 0.0};  // meters, room coordinates
  Role role = Role::kTarget;
  Direction direction_from_array;  // bearing seen from the array center
  double distance = 0.0;           // meters from array center
};

struct Rir {
  std::vector<Waveform> taps;              // per mic
  std::vector<double> direct_path_sample;  // fractional arrival index per mic
};

// Wall models mapping a requested RT60 to a uniform absorption coefficient.
// Sabine is the textbook inversion; Eyring tracks the decay that an
// image-source model actually produces once absorption is no longer small.
enum class AbsorptionModel { kSabine, kEyring };

struct AbsorptionResult {
  double absorption = 0.0;  // uniform wall alpha in (0, 1)
  int required_order = 0;   // image order covering >= rt60 seconds of tail
};

// Sabine inversion alpha = 0.161 V / (rt60 S). Throws infeasible-rt60 when
// alpha would reach 1.
AbsorptionResult rt60_to_absorption(const RoomSpec& room);

double eyring_absorption(const RoomSpec& room);

// Image order whose reflection paths span at least `seconds` of propagation
// along the tightest room axis.
int image_order_for(const RoomSpec& room, double seconds);

struct SimOptions {
  double tail_factor = 1.5;  // simulated tail length as a multiple of rt60
  AbsorptionModel absorption_model = AbsorptionModel::kSabine;
  // All-positive image pulses pile up into a DC offset that stalls the
  // measured decay; the classic 100 Hz high-pass removes it.
  bool highpass = true;
};

// Shoebox image-source simulation with 81-tap Hann-windowed-sinc fractional
// delays. Per-mic direct path lands within a sample of the Euclidean
// prediction; the decay tail matches the requested RT60 (Schroeder check).
Rir simulate_rir(const RoomSpec& room, const SourcePlacement& src,
                 const ArrayGeometry& g, const Point3& array_center,
                 const SimOptions& opts = {});

// Fractional sample index of the direct-path arrival: the earliest local
// peak of |h| within 8 dB of the global maximum, parabolic-refined. A
// near-wall reflection can out-tap a direct pulse that straddles the sample
// grid, so onset detection beats a plain argmax.
double direct_path_arrival(const Waveform& rir);

// Backward-integrated energy decay in dB, normalized to 0 dB at t=0.
std::vector<double> schroeder_curve_db(const Waveform& rir);

// T60 from a line fit to the -4..-20 dB span of the Schroeder curve. The
// early span tracks the mean decay before the direction mixture of a
// specular shoebox flattens the curve.
double estimate_rt60_schroeder(const Waveform& rir, double sample_rate);

// One sampled acoustic scene (room, placements, array pose).
struct SceneSample {
  RoomSpec room;
  SourcePlacement target;
  SourcePlacement interferer;
  Point3 array_center{0.0, 0.0, 0.0};
};

// Draws a scene: room 4-10 x 3.5-8 x 2.5-3.5 m, RT60 in [0.19, 0.82] s with
// mean 0.38, target in the camera field of view (azimuth +-45 deg, elevation
// +-20 deg, 0.8-1.5 m), interferer uniform in the room at >= 0.5 m from both
// the array and the target. Deterministic given the generator state.
SceneSample sample_scene(Rng& rng, double tail_factor = 1.5);
SceneSample sample_scene(uint64_t seed, double tail_factor = 1.5);

struct SceneInfo {
  RoomSpec room;
  double absorption = 0.0;
  SourcePlacement target;
  SourcePlacement interferer;
  Point3 array_center{0.0, 0.0, 0.0};
  uint64_t seed = 0;
  double noise_floor_db = -50.0;
};

struct SceneRecording {
  MultichannelWaveform mixture;
  MultichannelWaveform target_reverberant;  // pre-mix scale
  MultichannelWaveform interferer_scaled;   // after SNR scaling
  Waveform clean_reference;                 // target image at channel 0
  double snr_db = 0.0;
  SceneInfo metadata;
};

// Scales the interferer so the reference-channel (channel 0) broadband power
// ratio equals snr_db, then adds white sensor noise at noise_floor_db
// relative to the premix RMS. noise_floor_db = -inf disables the noise.
SceneRecording mix_at_snr(const MultichannelWaveform& target_conv,
                          const MultichannelWaveform& interferer_conv,
                          double snr_db, double noise_floor_db, Rng& rng);

// Full render: simulate both RIRs, convolve the dry sources, mix at snr_db.
SceneRecording render_scene(const SceneSample& scene, const ArrayGeometry& g,
                            const Waveform& target_source,
                            const Waveform& interferer_source, double snr_db,
                            double noise_floor_db, Rng& rng,
                            const SimOptions& opts = {});

}  // namespace arraybench

#endif  // ARRAYBENCH_ROOM_SIM_H_
