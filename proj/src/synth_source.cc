// src/synth_source.cc

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

#include "arraybench/synth_source.h"

#include <cmath>
#include <vector>

namespace arraybench {

Waveform synth_speech_like(Rng& rng, double seconds, double sample_rate) {
  const size_t n = static_cast<size_t>(seconds * sample_rate);
  if (n == 0) fail("invalid-config", "empty source requested");

  const double f0 = rng.uniform(90.0, 250.0);
  const double vibrato_hz = rng.uniform(4.0, 7.0);
  const double vibrato_depth = rng.uniform(0.01, 0.04);
  const double vibrato_phase = rng.uniform(0.0, 2.0 * kPi);
  const double syllable_hz = rng.uniform(2.0, 6.0);
  const double syllable_phase = rng.uniform(0.0, 2.0 * kPi);

  // Three formant-style resonances shaping the harmonic amplitudes.
  const double formants[3] = {rng.uniform(300.0, 900.0), rng.uniform(1000.0, 2300.0),
                              rng.uniform(2400.0, 3400.0)};
  const double widths[3] = {90.0, 130.0, 180.0};

  const double max_harmonic_hz = std::min(0.45 * sample_rate, 7000.0);
  const int harmonics = std::max(1, static_cast<int>(max_harmonic_hz / f0));
  std::vector<double> amp(harmonics), phase(harmonics);
  for (int k = 0; k < harmonics; ++k) {
    const double f = (k + 1) * f0;
    double env = 0.05;
    for (int i = 0; i < 3; ++i) {
      const double d = (f - formants[i]) / widths[i];
      env += 1.0 / (1.0 + d * d);
    }
    env /= 1.0 + std::pow(f / 3200.0, 2.0);  // spectral tilt
    amp[k] = env;
    phase[k] = rng.uniform(0.0, 2.0 * kPi);
  }

  // Alternating voiced segments and unvoiced (noise-burst) segments.
  std::vector<char> voiced(n, 1);
  {
    size_t pos = static_cast<size_t>(rng.uniform(0.2, 0.6) * sample_rate);
    while (pos < n) {
      const size_t burst = static_cast<size_t>(rng.uniform(0.04, 0.15) * sample_rate);
      for (size_t i = pos; i < std::min(n, pos + burst); ++i) voiced[i] = 0;
      pos += burst + static_cast<size_t>(rng.uniform(0.15, 0.5) * sample_rate);
    }
  }

  Waveform out(n, 0.0);
  double inst_phase = 0.0;
  double fric_state = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double t = i / sample_rate;
    const double f_inst =
        f0 * (1.0 + vibrato_depth * std::sin(2.0 * kPi * vibrato_hz * t + vibrato_phase));
    inst_phase += 2.0 * kPi * f_inst / sample_rate;

    double v = 0.0;
    if (voiced[i]) {
      for (int k = 0; k < harmonics; ++k) {
        const double ph = (k + 1) * inst_phase + phase[k];
        v += amp[k] * std::sin(ph);
      }
      v *= 0.25;
    } else {
      // High-tilted fricative-style noise.
      const double w = rng.normal();
      fric_state = 0.7 * (w - fric_state) + 0.3 * w;
      v = 0.35 * fric_state;
    }

    const double syl = std::sin(2.0 * kPi * syllable_hz * t + syllable_phase);
    const double am = 0.35 + 0.65 * (0.5 + 0.5 * syl) * (0.5 + 0.5 * syl);
    // Low broadband floor keeps all bands occupied for whitening front ends.
    out[i] = am * v + 0.003 * rng.normal();
  }

  const double target_rms = 0.05;
  const double r = rms(out);
  if (r > 0.0)
    for (auto& v : out) v *= target_rms / r;
  return out;
}

}  // namespace arraybench
