// include/arraybench/wav_io.h

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

#ifndef ARRAYBENCH_WAV_IO_H_
#define ARRAYBENCH_WAV_IO_H_

#include <string>

#include "arraybench/common.h"

namespace arraybench {

struct WavData {
  MultichannelWaveform channels;
  double sample_rate = 0.0;
  double duration_seconds() const {
    return channels.empty() ? 0.0 : channels[0].size() / sample_rate;
  }
};

// Reads PCM16, PCM32 or float32 RIFF/WAVE files.
WavData read_wav(const std::string& path);

// Writes IEEE float32 (format tag 3), any channel count.
void write_wav(const std::string& path, const MultichannelWaveform& x, double sample_rate);
void write_wav(const std::string& path, const Waveform& x, double sample_rate);

}  // namespace arraybench

#endif  // ARRAYBENCH_WAV_IO_H_
