// include/arraybench/mask.h

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

#ifndef ARRAYBENCH_MASK_H_
#define ARRAYBENCH_MASK_H_

#include <vector>

#include "arraybench/common.h"
#include "arraybench/stft.h"

namespace arraybench {

// Real-valued magnitude mask on the reference channel's time-frequency grid.
struct MagnitudeMask {
  std::vector<double> values;  // [bin][frame]
  int num_bins = 0;
  int num_frames = 0;
  int reference_channel = 0;
  double mask_max = 1.0;

  double& at(int f, int t) { return values[static_cast<size_t>(f) * num_frames + t]; }
  double at(int f, int t) const { return values[static_cast<size_t>(f) * num_frames + t]; }
};

// m = |S|^p / (|S|^p + |X - S|^p), clamped to [0, 1]. Bins where both terms
// vanish count as target-dominated (mask 1); the reference magnitude is zero
// there anyway.
MagnitudeMask ideal_ratio_mask(const ComplexSpectrogram& target_ref,
                               const ComplexSpectrogram& mix_ref, int exponent = 1);

// 1 where the target-to-residual ratio is at least threshold_db, else 0.
MagnitudeMask ideal_binary_mask(const ComplexSpectrogram& target_ref,
                                const ComplexSpectrogram& mix_ref, double threshold_db);

// Reference-phase reconstruction: the enhanced bin is
// m(f,t) |X_ref(f,t)| e^{j angle X_ref(f,t)}, then inverse STFT.
Waveform apply_mask(const MagnitudeMask& m, const ComplexSpectrogram& mix_ref,
                    int length = -1);

// The masked spectrogram itself, for inspection and spectral-domain checks.
ComplexSpectrogram masked_spectrogram(const MagnitudeMask& m,
                                      const ComplexSpectrogram& mix_ref);

}  // namespace arraybench

#endif  // ARRAYBENCH_MASK_H_
