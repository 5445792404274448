// include/arraybench/synth_source.h

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

#ifndef ARRAYBENCH_SYNTH_SOURCE_H_
#define ARRAYBENCH_SYNTH_SOURCE_H_

#include "arraybench/common.h"
#include "arraybench/rng.h"

namespace arraybench {

// Speech-like test source: a harmonic train with randomized pitch
// (f0 in [90, 250] Hz with vibrato), formant-style spectral envelope,
// syllabic 2-6 Hz amplitude modulation, interleaved noise bursts, and a low
// broadband floor. Deterministic given the generator state.
Waveform synth_speech_like(Rng& rng, double seconds, double sample_rate);

}  // namespace arraybench

#endif  // ARRAYBENCH_SYNTH_SOURCE_H_
