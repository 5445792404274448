// src/room_sim.cc

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

#include "arraybench/room_sim.h"

#include <algorithm>
#include <cmath>

#include "arraybench/fft.h"

namespace arraybench {

namespace {

constexpr double kSabineConstant = 0.161;  // s/m at c = 343 m/s
constexpr int kSincHalfWidth = 40;         // 81-tap windowed-sinc interpolation
constexpr int kMaxPlacementDraws = 10000;

double dist3(const Point3& a, const Point3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void check_inside(const Point3& p, const Point3& dims, const char* what) {
  for (int k = 0; k < 3; ++k)
    if (!(p[k] > 0.0 && p[k] < dims[k]))
      fail("placement", std::string(what) + " outside room");
}

// One lattice axis of image sources: mirrored coordinate term and the number
// of wall reflections it contributes.
struct AxisImage {
  double coord;      // image-minus-mic coordinate, meters
  int reflections;   // |2m - q|
  double reflect_gain;  // beta^reflections
};

std::vector<AxisImage> axis_images(double src, double mic, double room_len,
                                   double max_dist, int max_order, double beta) {
  std::vector<AxisImage> out;
  const int n = static_cast<int>(std::ceil(max_dist / (2.0 * room_len))) + 1;
  for (int m = -n; m <= n; ++m) {
    for (int q = 0; q <= 1; ++q) {
      const int refl = std::abs(2 * m - q);
      if (refl > max_order) continue;
      const double coord = (1 - 2 * q) * src - mic + 2.0 * m * room_len;
      if (std::abs(coord) > max_dist) continue;
      out.push_back({coord, refl, std::pow(beta, refl)});
    }
  }
  return out;
}

// Second-order 100 Hz high-pass (Allen-Berkley form) removing the DC
// buildup of summed positive image pulses.
void highpass_rir(Waveform* taps, double fs) {
  const double w = 2.0 * kPi * 100.0 / fs;
  const double r1 = std::exp(-w);
  const double b1 = 2.0 * r1 * std::cos(w);
  const double b2 = -r1 * r1;
  const double a1 = -(1.0 + r1);
  double y1 = 0.0, y2 = 0.0;
  for (double& x : *taps) {
    const double y0 = b1 * y1 + b2 * y2 + x;
    x = y0 + a1 * y1 + r1 * y2;
    y2 = y1;
    y1 = y0;
  }
}

// Adds gain * hann(x) * sinc(x) centered at fractional sample `arrival`.
void place_impulse(Waveform* taps, double arrival, double gain) {
  const int len = static_cast<int>(taps->size());
  const int n0 = static_cast<int>(std::lround(arrival));
  const double frac = arrival - n0;  // in [-0.5, 0.5]

  const double s0 = std::sin(kPi * frac);  // sin(pi*(k-frac)) = -(-1)^k * s0
  const double width = 2.0 * kSincHalfWidth + 1.0;
  const double step = 2.0 * kPi / width;
  double theta = step * (-kSincHalfWidth - frac);
  double ct = std::cos(theta), st = std::sin(theta);
  const double cs = std::cos(step), ss = std::sin(step);

  double sign = (kSincHalfWidth % 2 == 0) ? -1.0 : 1.0;  // -(-1)^k at k=-40
  for (int k = -kSincHalfWidth; k <= kSincHalfWidth; ++k) {
    const int n = n0 + k;
    if (n >= 0 && n < len) {
      const double x = k - frac;
      const double sinc = (std::abs(x) < 1e-12) ? 1.0 : sign * s0 / (kPi * x);
      const double win = 0.5 + 0.5 * ct;
      (*taps)[n] += gain * win * sinc;
    }
    sign = -sign;
    const double ct2 = ct * cs - st * ss;
    st = st * cs + ct * ss;
    ct = ct2;
  }
}

}  // namespace

AbsorptionResult rt60_to_absorption(const RoomSpec& room) {
  if (room.rt60 <= 0.0) fail("infeasible-rt60", "rt60 must be positive");
  const double v = room.volume();
  const double s = room.surface_area();
  if (v <= 0.0 || s <= 0.0) fail("infeasible-rt60", "degenerate room");
  const double alpha = kSabineConstant * v / (room.rt60 * s);
  if (alpha >= 1.0)
    fail("infeasible-rt60", "requested rt60 needs absorption >= 1");
  return {alpha, image_order_for(room, room.rt60)};
}

double eyring_absorption(const RoomSpec& room) {
  if (room.rt60 <= 0.0) fail("infeasible-rt60", "rt60 must be positive");
  const double x = kSabineConstant * room.volume() / (room.rt60 * room.surface_area());
  return 1.0 - std::exp(-x);
}

int image_order_for(const RoomSpec& room, double seconds) {
  const double min_dim =
      std::min({room.dimensions[0], room.dimensions[1], room.dimensions[2]});
  const double path = 343.0 * seconds;
  return static_cast<int>(std::ceil(path / min_dim)) + 1;
}

Rir simulate_rir(const RoomSpec& room, const SourcePlacement& src,
                 const ArrayGeometry& g, const Point3& array_center,
                 const SimOptions& opts) {
  if (room.max_image_order < 0) fail("placement", "negative image order");
  check_inside(src.position, room.dimensions, "source");

  const double fs = room.sample_rate;
  const double meters_per_sample = g.speed_of_sound / fs;
  const int mics = g.num_mics();

  std::vector<Point3> mic_abs(mics);
  double max_direct = 0.0;
  for (int m = 0; m < mics; ++m) {
    for (int k = 0; k < 3; ++k)
      mic_abs[m][k] = array_center[k] + g.mic_positions[m][k];
    check_inside(mic_abs[m], room.dimensions, "microphone");
    max_direct = std::max(max_direct, dist3(src.position, mic_abs[m]));
  }

  double alpha = 0.0;
  if (room.max_image_order > 0) {
    alpha = (opts.absorption_model == AbsorptionModel::kSabine)
                ? rt60_to_absorption(room).absorption
                : eyring_absorption(room);
  }
  const double beta = std::sqrt(1.0 - alpha);

  const double tail_s = (room.max_image_order > 0) ? opts.tail_factor * room.rt60 : 0.0;
  const int len = static_cast<int>(std::ceil(max_direct / meters_per_sample + tail_s * fs)) +
                  2 * kSincHalfWidth + 1;
  const double max_dist = (len + kSincHalfWidth) * meters_per_sample;

  Rir rir;
  rir.taps.assign(mics, Waveform(len, 0.0));
  rir.direct_path_sample.resize(mics);

  for (int m = 0; m < mics; ++m) {
    rir.direct_path_sample[m] = dist3(src.position, mic_abs[m]) / meters_per_sample;

    const auto xs = axis_images(src.position[0], mic_abs[m][0], room.dimensions[0],
                                max_dist, room.max_image_order, beta);
    const auto ys = axis_images(src.position[1], mic_abs[m][1], room.dimensions[1],
                                max_dist, room.max_image_order, beta);
    const auto zs = axis_images(src.position[2], mic_abs[m][2], room.dimensions[2],
                                max_dist, room.max_image_order, beta);

    Waveform* taps = &rir.taps[m];
    const double max_dist2 = max_dist * max_dist;
    for (const auto& ix : xs) {
      for (const auto& iy : ys) {
        const double dxy2 = ix.coord * ix.coord + iy.coord * iy.coord;
        if (dxy2 > max_dist2) continue;
        const int oxy = ix.reflections + iy.reflections;
        if (oxy > room.max_image_order) continue;
        const double gxy = ix.reflect_gain * iy.reflect_gain;
        for (const auto& iz : zs) {
          if (oxy + iz.reflections > room.max_image_order) continue;
          const double d2 = dxy2 + iz.coord * iz.coord;
          if (d2 > max_dist2) continue;
          const double d = std::sqrt(d2);
          const double gain = gxy * iz.reflect_gain / (4.0 * kPi * std::max(d, 1e-3));
          place_impulse(taps, d / meters_per_sample, gain);
        }
      }
    }
    if (opts.highpass) highpass_rir(taps, fs);
  }
  return rir;
}

double direct_path_arrival(const Waveform& rir) {
  if (rir.size() < 3) fail("degenerate-signal", "impulse response too short");
  double global = 0.0;
  for (double v : rir) global = std::max(global, std::abs(v));
  if (global <= 0.0) fail("degenerate-signal", "zero-energy impulse response");
  const double threshold = 0.4 * global;  // -8 dB, clears windowed-sinc sidelobes

  for (size_t i = 1; i + 1 < rir.size(); ++i) {
    const double yl = std::abs(rir[i - 1]);
    const double yc = std::abs(rir[i]);
    const double yr = std::abs(rir[i + 1]);
    if (yc < threshold || yc < yl || yc < yr) continue;
    const double den = yl - 2.0 * yc + yr;
    const double delta =
        std::abs(den) > 1e-30 ? std::clamp(0.5 * (yl - yr) / den, -0.5, 0.5) : 0.0;
    return static_cast<double>(i) + delta;
  }
  fail("degenerate-signal", "no direct-path peak found");
}

std::vector<double> schroeder_curve_db(const Waveform& rir) {
  if (rir.empty()) fail("degenerate-signal", "empty impulse response");
  std::vector<double> tail(rir.size());
  double acc = 0.0;
  for (size_t i = rir.size(); i-- > 0;) {
    acc += rir[i] * rir[i];
    tail[i] = acc;
  }
  if (acc <= 0.0) fail("degenerate-signal", "zero-energy impulse response");
  std::vector<double> db(rir.size());
  for (size_t i = 0; i < rir.size(); ++i)
    db[i] = 10.0 * std::log10(std::max(tail[i] / acc, 1e-30));
  return db;
}

double estimate_rt60_schroeder(const Waveform& rir, double sample_rate) {
  const auto edc = schroeder_curve_db(rir);
  size_t t_hi = edc.size(), t_lo = edc.size();
  for (size_t i = 0; i < edc.size(); ++i) {
    if (t_hi == edc.size() && edc[i] <= -4.0) t_hi = i;
    if (edc[i] <= -20.0) {
      t_lo = i;
      break;
    }
  }
  if (t_hi >= t_lo || t_lo == edc.size())
    fail("schroeder", "decay range does not reach -20 dB");

  // Least-squares line over the fit span; T60 extrapolated from the slope.
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = t_hi; i <= t_lo; ++i) {
    const double x = static_cast<double>(i), y = edc[i];
    n += 1.0;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  if (!(slope < 0.0)) fail("schroeder", "non-decaying energy curve");
  return -60.0 / slope / sample_rate;
}

SceneSample sample_scene(Rng& rng, double tail_factor) {
  SceneSample scene;
  RoomSpec& room = scene.room;
  room.dimensions[0] = rng.uniform(4.0, 10.0);
  room.dimensions[1] = rng.uniform(3.5, 8.0);
  room.dimensions[2] = rng.uniform(2.5, 3.5);
  // Power-law map keeps RT60 in [0.19, 0.82] with mean 0.38.
  room.rt60 = 0.19 + 0.63 * std::pow(rng.uniform(), 2.3158);
  room.sample_rate = 16000.0;
  room.max_image_order = image_order_for(room, tail_factor * room.rt60);

  const auto& dims = room.dimensions;
  Point3& center = scene.array_center;

  const double fov_az = 45.0 * kPi / 180.0;
  const double fov_el = 20.0 * kPi / 180.0;
  const double margin = 0.05;

  // The device looks along +x. An array pose drawn close to the wall it
  // faces can make the whole field of view infeasible, so pose and target
  // are rejection-sampled together under one draw budget.
  int draws = 0;
  for (bool placed = false; !placed;) {
    center[0] = rng.uniform(0.5, dims[0] - 0.5);
    center[1] = rng.uniform(0.5, dims[1] - 0.5);
    center[2] = rng.uniform(0.5, dims[2] - 0.6);  // keeps the apex mic clear
    for (int attempt = 0; attempt < 50 && !placed; ++attempt) {
      if (++draws > kMaxPlacementDraws)
        fail("sampling-exhausted", "could not place target after 10000 draws");
      Direction dir{rng.uniform(-fov_az, fov_az), rng.uniform(-fov_el, fov_el)};
      const double dist = rng.uniform(0.8, 1.5);
      const Point3 u = direction_to_unit(dir);
      Point3 pos;
      bool ok = true;
      for (int k = 0; k < 3; ++k) {
        pos[k] = center[k] + dist * u[k];
        ok = ok && pos[k] > margin && pos[k] < dims[k] - margin;
      }
      if (!ok) continue;
      scene.target = {pos, SourcePlacement::Role::kTarget, dir, dist};
      placed = true;
    }
  }

  for (;;) {
    if (++draws > kMaxPlacementDraws)
      fail("sampling-exhausted", "could not place interferer after 10000 draws");
    Point3 pos{rng.uniform(margin, dims[0] - margin),
               rng.uniform(margin, dims[1] - margin),
               rng.uniform(margin, dims[2] - margin)};
    if (dist3(pos, center) < 0.5) continue;
    if (dist3(pos, scene.target.position) < 0.5) continue;
    const double dx = pos[0] - center[0], dy = pos[1] - center[1],
                 dz = pos[2] - center[2];
    const double dist = dist3(pos, center);
    Direction dir{std::atan2(dy, dx), std::asin(std::clamp(dz / dist, -1.0, 1.0))};
    scene.interferer = {pos, SourcePlacement::Role::kInterferer, dir, dist};
    break;
  }
  return scene;
}

SceneSample sample_scene(uint64_t seed, double tail_factor) {
  Rng rng(seed);
  return sample_scene(rng, tail_factor);
}

SceneRecording mix_at_snr(const MultichannelWaveform& target_conv,
                          const MultichannelWaveform& interferer_conv,
                          double snr_db, double noise_floor_db, Rng& rng) {
  if (target_conv.size() != interferer_conv.size() || target_conv.empty())
    fail("alignment", "mix_at_snr channel counts differ");
  check_equal_lengths(target_conv, "mix_at_snr target");
  check_equal_lengths(interferer_conv, "mix_at_snr interferer");
  if (target_conv[0].size() != interferer_conv[0].size())
    fail("alignment", "mix_at_snr lengths differ");

  const double p_target = energy(target_conv[0]);
  const double p_interf = energy(interferer_conv[0]);
  if (p_target <= 0.0) fail("degenerate-source", "silent target on reference channel");
  if (p_interf <= 0.0) fail("degenerate-source", "silent interferer on reference channel");

  double scale = 0.0;
  if (!std::isinf(snr_db))
    scale = std::sqrt(p_target / (p_interf * std::pow(10.0, snr_db / 10.0)));

  const int channels = static_cast<int>(target_conv.size());
  const size_t n = target_conv[0].size();

  SceneRecording rec;
  rec.snr_db = snr_db;
  rec.target_reverberant = target_conv;
  rec.interferer_scaled.assign(channels, Waveform(n));
  rec.mixture.assign(channels, Waveform(n));

  double premix_energy = 0.0;
  for (int c = 0; c < channels; ++c) {
    for (size_t i = 0; i < n; ++i) {
      const double s = scale * interferer_conv[c][i];
      rec.interferer_scaled[c][i] = s;
      const double v = target_conv[c][i] + s;
      rec.mixture[c][i] = v;
      premix_energy += v * v;
    }
  }

  if (!std::isinf(noise_floor_db)) {
    const double premix_rms = std::sqrt(premix_energy / (channels * n));
    const double sigma = premix_rms * std::pow(10.0, noise_floor_db / 20.0);
    for (int c = 0; c < channels; ++c)
      for (size_t i = 0; i < n; ++i) rec.mixture[c][i] += sigma * rng.normal();
  }

  rec.clean_reference = rec.target_reverberant[0];
  rec.metadata.noise_floor_db = noise_floor_db;
  return rec;
}

SceneRecording render_scene(const SceneSample& scene, const ArrayGeometry& g,
                            const Waveform& target_source,
                            const Waveform& interferer_source, double snr_db,
                            double noise_floor_db, Rng& rng,
                            const SimOptions& opts) {
  if (target_source.size() != interferer_source.size())
    fail("alignment", "source lengths differ");
  const size_t n = target_source.size();

  const Rir target_rir = simulate_rir(scene.room, scene.target, g,
                                      scene.array_center, opts);
  const Rir interf_rir = simulate_rir(scene.room, scene.interferer, g,
                                      scene.array_center, opts);

  const int mics = g.num_mics();
  MultichannelWaveform target_conv(mics), interf_conv(mics);
  for (int m = 0; m < mics; ++m) {
    target_conv[m] = fft_convolve(target_source, target_rir.taps[m]);
    target_conv[m].resize(n);
    interf_conv[m] = fft_convolve(interferer_source, interf_rir.taps[m]);
    interf_conv[m].resize(n);
  }

  SceneRecording rec = mix_at_snr(target_conv, interf_conv, snr_db, noise_floor_db, rng);
  rec.metadata.room = scene.room;
  rec.metadata.absorption = (opts.absorption_model == AbsorptionModel::kSabine)
                                ? rt60_to_absorption(scene.room).absorption
                                : eyring_absorption(scene.room);
  rec.metadata.target = scene.target;
  rec.metadata.interferer = scene.interferer;
  rec.metadata.array_center = scene.array_center;
  rec.metadata.noise_floor_db = noise_floor_db;
  return rec;
}

}  // namespace arraybench
