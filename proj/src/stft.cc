// src/stft.cc

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

#include "arraybench/stft.h"

#include <cmath>

#include "arraybench/fft.h"
#include "arraybench/tensor_io.h"

namespace arraybench {

void validate_config(const StftConfig& cfg) {
  if (cfg.fft_size < 2 || (cfg.fft_size & (cfg.fft_size - 1)) != 0)
    fail("invalid-config", "fft_size must be a power of two >= 2");
  if (cfg.hop < 1 || cfg.hop > cfg.fft_size / 2)
    fail("invalid-config", "hop must be in [1, fft_size/2] for exact overlap-add");
  if (cfg.sample_rate <= 0.0) fail("invalid-config", "sample rate must be positive");
}

std::vector<double> hann_window(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / static_cast<double>(n));
  return w;
}

namespace {

struct Framing {
  int pad;         // fft_size / 2 of zeros before and after
  int num_frames;  // frames covering every real sample
};

Framing make_framing(int signal_len, const StftConfig& cfg) {
  const int pad = cfg.fft_size / 2;
  const int last_needed = pad + signal_len - cfg.fft_size;  // last start covering tail
  int frames = 1;
  if (last_needed > 0) frames = (last_needed + cfg.hop - 1) / cfg.hop + 1;
  return {pad, frames};
}

}  // namespace

ComplexSpectrogram stft(const MultichannelWaveform& x, const StftConfig& cfg) {
  validate_config(cfg);
  if (x.empty()) fail("too-short", "no channels");
  check_equal_lengths(x, "stft");
  const int n = static_cast<int>(x[0].size());
  if (n < cfg.fft_size) fail("too-short", "signal shorter than one frame");

  const auto f = make_framing(n, cfg);
  const int bins = cfg.fft_size / 2 + 1;
  const auto window = hann_window(cfg.fft_size);

  ComplexSpectrogram s;
  s.num_channels = static_cast<int>(x.size());
  s.num_bins = bins;
  s.num_frames = f.num_frames;
  s.signal_length = n;
  s.config = cfg;
  s.data.assign(static_cast<size_t>(s.num_channels) * bins * f.num_frames, Complex(0, 0));

  std::vector<Complex> buf(cfg.fft_size);
  for (int c = 0; c < s.num_channels; ++c) {
    const Waveform& ch = x[c];
    for (int m = 0; m < f.num_frames; ++m) {
      const int start = m * cfg.hop - f.pad;  // position in unpadded coordinates
      for (int i = 0; i < cfg.fft_size; ++i) {
        const int idx = start + i;
        const double v = (idx >= 0 && idx < n) ? ch[idx] : 0.0;
        buf[i] = Complex(v * window[i], 0.0);
      }
      fft(&buf, false);
      for (int k = 0; k < bins; ++k) s.at(c, k, m) = buf[k];
    }
  }
  return s;
}

ComplexSpectrogram stft(const Waveform& x, const StftConfig& cfg) {
  return stft(MultichannelWaveform{x}, cfg);
}

Waveform istft(const ComplexSpectrogram& s, int channel, int length) {
  validate_config(s.config);
  if (channel < 0 || channel >= s.num_channels) fail("alignment", "istft channel out of range");
  const StftConfig& cfg = s.config;
  const int n = length < 0 ? s.signal_length : length;
  const auto f = make_framing(n, cfg);
  if (f.num_frames > s.num_frames)
    fail("alignment", "spectrogram too short for requested length");
  const auto window = hann_window(cfg.fft_size);

  const int total = (f.num_frames - 1) * cfg.hop + cfg.fft_size;
  Waveform acc(total, 0.0);
  Waveform norm(total, 0.0);

  std::vector<Complex> buf(cfg.fft_size);
  for (int m = 0; m < f.num_frames; ++m) {
    for (int k = 0; k < s.num_bins; ++k) buf[k] = s.at(channel, k, m);
    for (int k = s.num_bins; k < cfg.fft_size; ++k)
      buf[k] = std::conj(s.at(channel, cfg.fft_size - k, m));
    fft(&buf, true);
    const int off = m * cfg.hop;
    for (int i = 0; i < cfg.fft_size; ++i) {
      acc[off + i] += window[i] * buf[i].real();
      norm[off + i] += window[i] * window[i];
    }
  }

  Waveform out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int idx = i + f.pad;
    if (idx < total && norm[idx] > 1e-12) out[i] = acc[idx] / norm[idx];
  }
  return out;
}

ComplexInputTensor complex_input(const ComplexSpectrogram& s) {
  ComplexInputTensor t;
  t.num_planes = 2 * s.num_channels;
  t.num_bins = s.num_bins;
  t.num_frames = s.num_frames;
  const size_t plane = static_cast<size_t>(s.num_bins) * s.num_frames;
  t.values.resize(static_cast<size_t>(t.num_planes) * plane);
  for (int c = 0; c < s.num_channels; ++c) {
    for (int k = 0; k < s.num_bins; ++k) {
      for (int m = 0; m < s.num_frames; ++m) {
        const Complex v = s.at(c, k, m);
        const size_t off = static_cast<size_t>(k) * s.num_frames + m;
        t.values[c * plane + off] = v.real();
        t.values[(s.num_channels + c) * plane + off] = v.imag();
      }
    }
  }
  return t;
}

std::vector<Complex> complex_input_unpack(const ComplexInputTensor& t) {
  const int channels = t.num_planes / 2;
  const size_t plane = static_cast<size_t>(t.num_bins) * t.num_frames;
  std::vector<Complex> out(channels * plane);
  for (int c = 0; c < channels; ++c)
    for (size_t i = 0; i < plane; ++i)
      out[c * plane + i] =
          Complex(t.values[c * plane + i], t.values[(channels + c) * plane + i]);
  return out;
}

Waveform fractional_delay(const Waveform& x, double delay_samples) {
  if (x.empty()) return {};
  if (std::abs(delay_samples) >= static_cast<double>(x.size()))
    fail("invalid-config", "delay exceeds signal length");
  const size_t margin = static_cast<size_t>(std::ceil(std::abs(delay_samples))) + 64;
  const size_t p = next_pow2(x.size() + margin);

  // Crossfade the circular pad between the end and start values so the
  // periodic extension is continuous; a hard step would ring into the
  // interior through the all-pass kernel's sinc tails.
  std::vector<Complex> buf(p, Complex(0.0, 0.0));
  for (size_t i = 0; i < x.size(); ++i) buf[i] = Complex(x[i], 0.0);
  const size_t pad = p - x.size();
  const double head = x.front(), tail = x.back();
  for (size_t i = 0; i < pad; ++i) {
    const double w = 0.5 + 0.5 * std::cos(kPi * (i + 1) / static_cast<double>(pad + 1));
    buf[x.size() + i] = Complex(tail * w + head * (1.0 - w), 0.0);
  }
  std::vector<Complex>& spec = buf;
  fft(&spec, false);

  const double step = -2.0 * kPi * delay_samples / static_cast<double>(p);
  for (size_t k = 1; k < p / 2; ++k) {
    const Complex ramp(std::cos(step * k), std::sin(step * k));
    spec[k] *= ramp;
    spec[p - k] = std::conj(spec[k]);
  }
  // Nyquist bin must stay real for a real output.
  spec[p / 2] *= std::cos(kPi * delay_samples);

  Waveform full = ifft_to_real(std::move(spec));
  full.resize(x.size());
  return full;
}

void dump_spectrogram(const std::string& path, const ComplexSpectrogram& s) {
  std::vector<double> values;
  values.reserve(s.data.size() * 2);
  for (const Complex& v : s.data) {
    values.push_back(v.real());
    values.push_back(v.imag());
  }
  write_tensor(path,
               {static_cast<uint32_t>(s.num_channels), static_cast<uint32_t>(s.num_bins),
                static_cast<uint32_t>(s.num_frames), 2},
               values);
}

}  // namespace arraybench
