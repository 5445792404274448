// src/fft.cc

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

#include "arraybench/fft.h"

#include <cmath>

namespace arraybench {

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft(std::vector<Complex>* data, bool inverse) {
  std::vector<Complex>& a = *data;
  const size_t n = a.size();
  if (n == 0) return;
  if ((n & (n - 1)) != 0) fail("fft", "length must be a power of two");

  // Bit-reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const Complex wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        Complex u = a[i + k];
        Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : a) v *= scale;
  }
}

std::vector<Complex> fft_real(const Waveform& x, size_t n) {
  if (n < x.size()) fail("fft", "transform shorter than signal");
  std::vector<Complex> buf(n, Complex(0.0, 0.0));
  for (size_t i = 0; i < x.size(); ++i) buf[i] = Complex(x[i], 0.0);
  fft(&buf, false);
  return buf;
}

Waveform ifft_to_real(std::vector<Complex> spectrum) {
  fft(&spectrum, true);
  Waveform out(spectrum.size());
  for (size_t i = 0; i < spectrum.size(); ++i) out[i] = spectrum[i].real();
  return out;
}

Waveform fft_convolve(const Waveform& x, const Waveform& h) {
  if (x.empty() || h.empty()) return {};
  const size_t out_len = x.size() + h.size() - 1;
  const size_t n = next_pow2(out_len);
  std::vector<Complex> fx = fft_real(x, n);
  std::vector<Complex> fh = fft_real(h, n);
  for (size_t i = 0; i < n; ++i) fx[i] *= fh[i];
  Waveform full = ifft_to_real(std::move(fx));
  full.resize(out_len);
  return full;
}

}  // namespace arraybench
