// include/arraybench/fft.h

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

#ifndef ARRAYBENCH_FFT_H_
#define ARRAYBENCH_FFT_H_

#include <vector>

#include "arraybench/common.h"

namespace arraybench {

// In-place iterative radix-2 complex FFT, double precision. Power-of-two
// lengths only; results are bit-deterministic across runs and threads.
void fft(std::vector<Complex>* data, bool inverse);

// Forward FFT of a real signal zero-padded to `n` (power of two),
// returning the full two-sided spectrum.
std::vector<Complex> fft_real(const Waveform& x, size_t n);

// Inverse of a conjugate-symmetric spectrum; imaginary residue is dropped.
Waveform ifft_to_real(std::vector<Complex> spectrum);

size_t next_pow2(size_t n);

// Linear convolution via FFT, output length |x| + |h| - 1.
Waveform fft_convolve(const Waveform& x, const Waveform& h);

}  // namespace arraybench

#endif  // ARRAYBENCH_FFT_H_
