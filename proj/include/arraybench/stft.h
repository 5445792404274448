// include/arraybench/stft.h

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

#ifndef ARRAYBENCH_STFT_H_
#define ARRAYBENCH_STFT_H_

#include <vector>

#include "arraybench/common.h"

namespace arraybench {

// Hann analysis, weighted overlap-add synthesis (division by the summed
// squared window), so any hop <= fft_size/2 reconstructs exactly. Signals are
// zero-padded by fft_size/2 at both ends and trimmed after synthesis.
struct StftConfig {
  int fft_size = 512;
  int hop = 160;  // 10 ms at 16 kHz
  double sample_rate = 16000.0;
};

void validate_config(const StftConfig& cfg);

std::vector<double> hann_window(int n);  // periodic Hann

// One-sided complex STFT tensor: channels x bins x frames, bins = fft/2 + 1.
struct ComplexSpectrogram {
  std::vector<Complex> data;  // layout [channel][bin][frame]
  int num_channels = 0;
  int num_bins = 0;
  int num_frames = 0;
  int signal_length = 0;  // pre-padding sample count, for exact resynthesis
  StftConfig config;

  Complex& at(int c, int f, int t) {
    return data[(static_cast<size_t>(c) * num_bins + f) * num_frames + t];
  }
  const Complex& at(int c, int f, int t) const {
    return data[(static_cast<size_t>(c) * num_bins + f) * num_frames + t];
  }
};

ComplexSpectrogram stft(const Waveform& x, const StftConfig& cfg);
ComplexSpectrogram stft(const MultichannelWaveform& x, const StftConfig& cfg);

// Resynthesize one channel; length < 0 means the stored signal length.
Waveform istft(const ComplexSpectrogram& s, int channel = 0, int length = -1);

// Real/imaginary planes concatenated channel-wise:
// planes [Re(ch0)..Re(chM-1), Im(ch0)..Im(chM-1)], each bins x frames.
struct ComplexInputTensor {
  std::vector<double> values;  // layout [plane][bin][frame]
  int num_planes = 0;
  int num_bins = 0;
  int num_frames = 0;
};

ComplexInputTensor complex_input(const ComplexSpectrogram& s);
// Inverse packing; returns data in the spectrogram's [c][f][t] layout.
std::vector<Complex> complex_input_unpack(const ComplexInputTensor& t);

// All-pass fractional shift via a frequency-domain phase ramp.
// Positive delay moves content later: y[n] ~= x[n - delay].
Waveform fractional_delay(const Waveform& x, double delay_samples);

// Debug dump as a [channels][bins][frames][2] tensor file (re, im last).
void dump_spectrogram(const std::string& path, const ComplexSpectrogram& s);

}  // namespace arraybench

#endif  // ARRAYBENCH_STFT_H_
