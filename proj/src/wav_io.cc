// src/wav_io.cc

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

#include "arraybench/wav_io.h"

#include <cstring>
#include <fstream>

namespace arraybench {

namespace {

uint32_t read_u32(std::istream& f) {
  unsigned char b[4];
  f.read(reinterpret_cast<char*>(b), 4);
  return b[0] | (b[1] << 8) | (b[2] << 16) | (uint32_t(b[3]) << 24);
}

uint16_t read_u16(std::istream& f) {
  unsigned char b[2];
  f.read(reinterpret_cast<char*>(b), 2);
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream& f, uint32_t v) {
  char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff),
               char((v >> 24) & 0xff)};
  f.write(b, 4);
}

void write_u16(std::ostream& f, uint16_t v) {
  char b[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
  f.write(b, 2);
}

}  // namespace

WavData read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail("wav-io", "cannot open " + path);
  char tag[4];
  f.read(tag, 4);
  if (std::memcmp(tag, "RIFF", 4) != 0) fail("wav-io", "not a RIFF file: " + path);
  read_u32(f);
  f.read(tag, 4);
  if (std::memcmp(tag, "WAVE", 4) != 0) fail("wav-io", "not a WAVE file: " + path);

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  std::vector<char> payload;

  while (f.read(tag, 4)) {
    uint32_t size = read_u32(f);
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      format = read_u16(f);
      channels = read_u16(f);
      sample_rate = read_u32(f);
      read_u32(f);  // byte rate
      read_u16(f);  // block align
      bits = read_u16(f);
      if (size > 16) f.seekg(size - 16, std::ios::cur);
      if (format == 0xFFFE) format = 3;  // extensible, assume float written by us
    } else if (std::memcmp(tag, "data", 4) == 0) {
      payload.resize(size);
      f.read(payload.data(), size);
      break;
    } else {
      f.seekg(size + (size & 1), std::ios::cur);
    }
  }
  if (channels == 0 || sample_rate == 0 || payload.empty())
    fail("wav-io", "missing fmt or data chunk: " + path);

  const int bytes = bits / 8;
  const size_t frames = payload.size() / (static_cast<size_t>(bytes) * channels);
  WavData w;
  w.sample_rate = sample_rate;
  w.channels.assign(channels, Waveform(frames));
  const unsigned char* p = reinterpret_cast<const unsigned char*>(payload.data());
  for (size_t n = 0; n < frames; ++n) {
    for (int c = 0; c < channels; ++c) {
      const unsigned char* s = p + (n * channels + c) * bytes;
      double v = 0.0;
      if (format == 3 && bits == 32) {
        float fv;
        std::memcpy(&fv, s, 4);
        v = fv;
      } else if (format == 1 && bits == 16) {
        int16_t iv = static_cast<int16_t>(s[0] | (s[1] << 8));
        v = iv / 32768.0;
      } else if (format == 1 && bits == 32) {
        int32_t iv;
        std::memcpy(&iv, s, 4);
        v = iv / 2147483648.0;
      } else {
        fail("wav-io", "unsupported sample format in " + path);
      }
      w.channels[c][n] = v;
    }
  }
  return w;
}

void write_wav(const std::string& path, const MultichannelWaveform& x, double sample_rate) {
  if (x.empty()) fail("wav-io", "no channels to write");
  check_equal_lengths(x, "write_wav");
  const uint16_t channels = static_cast<uint16_t>(x.size());
  const uint32_t frames = static_cast<uint32_t>(x[0].size());
  const uint32_t data_bytes = frames * channels * 4;

  std::ofstream f(path, std::ios::binary);
  if (!f) fail("wav-io", "cannot open " + path + " for writing");
  f.write("RIFF", 4);
  write_u32(f, 36 + data_bytes);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  write_u32(f, 16);
  write_u16(f, 3);  // IEEE float
  write_u16(f, channels);
  write_u32(f, static_cast<uint32_t>(sample_rate));
  write_u32(f, static_cast<uint32_t>(sample_rate) * channels * 4);
  write_u16(f, channels * 4);
  write_u16(f, 32);
  f.write("data", 4);
  write_u32(f, data_bytes);
  for (uint32_t n = 0; n < frames; ++n) {
    for (int c = 0; c < channels; ++c) {
      const float v = static_cast<float>(x[c][n]);
      f.write(reinterpret_cast<const char*>(&v), 4);
    }
  }
  if (!f) fail("wav-io", "write failed: " + path);
}

void write_wav(const std::string& path, const Waveform& x, double sample_rate) {
  write_wav(path, MultichannelWaveform{x}, sample_rate);
}

}  // namespace arraybench
