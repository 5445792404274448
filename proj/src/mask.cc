// src/mask.cc

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

#include "arraybench/mask.h"

#include <algorithm>
#include <cmath>

namespace arraybench {

namespace {

void check_aligned(const ComplexSpectrogram& a, const ComplexSpectrogram& b) {
  if (a.num_bins != b.num_bins || a.num_frames != b.num_frames)
    fail("alignment", "spectrogram shapes differ");
}

MagnitudeMask empty_like(const ComplexSpectrogram& s) {
  MagnitudeMask m;
  m.num_bins = s.num_bins;
  m.num_frames = s.num_frames;
  m.values.assign(static_cast<size_t>(s.num_bins) * s.num_frames, 0.0);
  return m;
}

}  // namespace

MagnitudeMask ideal_ratio_mask(const ComplexSpectrogram& target_ref,
                               const ComplexSpectrogram& mix_ref, int exponent) {
  check_aligned(target_ref, mix_ref);
  if (exponent != 1 && exponent != 2) fail("invalid-config", "exponent must be 1 or 2");

  MagnitudeMask m = empty_like(target_ref);
  for (int f = 0; f < m.num_bins; ++f) {
    for (int t = 0; t < m.num_frames; ++t) {
      const Complex s = target_ref.at(0, f, t);
      const Complex x = mix_ref.at(0, f, t);
      double num = std::abs(s);
      double res = std::abs(x - s);
      if (exponent == 2) {
        num *= num;
        res *= res;
      }
      const double denom = num + res;
      m.at(f, t) = (denom > 0.0) ? std::clamp(num / denom, 0.0, 1.0) : 1.0;
    }
  }
  return m;
}

MagnitudeMask ideal_binary_mask(const ComplexSpectrogram& target_ref,
                                const ComplexSpectrogram& mix_ref, double threshold_db) {
  check_aligned(target_ref, mix_ref);
  MagnitudeMask m = empty_like(target_ref);
  for (int f = 0; f < m.num_bins; ++f) {
    for (int t = 0; t < m.num_frames; ++t) {
      const double s = std::abs(target_ref.at(0, f, t));
      const double r = std::abs(mix_ref.at(0, f, t) - target_ref.at(0, f, t));
      double ratio_db;
      if (s == 0.0)
        ratio_db = -std::numeric_limits<double>::infinity();
      else if (r == 0.0)
        ratio_db = std::numeric_limits<double>::infinity();
      else
        ratio_db = 20.0 * std::log10(s / r);
      m.at(f, t) = (ratio_db >= threshold_db) ? 1.0 : 0.0;
    }
  }
  return m;
}

ComplexSpectrogram masked_spectrogram(const MagnitudeMask& m,
                                      const ComplexSpectrogram& mix_ref) {
  if (m.num_bins != mix_ref.num_bins || m.num_frames != mix_ref.num_frames)
    fail("alignment", "mask and spectrogram shapes differ");
  ComplexSpectrogram out = mix_ref;
  out.num_channels = 1;
  out.data.assign(static_cast<size_t>(out.num_bins) * out.num_frames, Complex(0, 0));
  // m * |X| e^{j arg X} == m * X for a real nonnegative mask.
  for (int f = 0; f < m.num_bins; ++f)
    for (int t = 0; t < m.num_frames; ++t)
      out.at(0, f, t) = m.at(f, t) * mix_ref.at(0, f, t);
  return out;
}

Waveform apply_mask(const MagnitudeMask& m, const ComplexSpectrogram& mix_ref, int length) {
  return istft(masked_spectrogram(m, mix_ref), 0, length);
}

}  // namespace arraybench
