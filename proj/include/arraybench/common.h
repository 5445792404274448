// include/arraybench/common.h

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

#ifndef ARRAYBENCH_COMMON_H_
#define ARRAYBENCH_COMMON_H_

#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace arraybench {

inline constexpr double kPi = 3.14159265358979323846;

// Mono waveform, 64-bit samples in memory (files are float32).
using Waveform = std::vector<double>;
// One Waveform per channel, all equal length.
using MultichannelWaveform = std::vector<Waveform>;

using Complex = std::complex<double>;

// Single error type; the message starts with a stable kind tag
// ("invalid-geometry: ...") so callers and tests can match on it.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& what) {
  throw Error(kind + ": " + what);
}

inline void warn(const std::string& msg) {
  std::cerr << "arraybench warning: " << msg << std::endl;
}

inline double energy(const Waveform& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

inline double rms(const Waveform& x) {
  return x.empty() ? 0.0 : std::sqrt(energy(x) / static_cast<double>(x.size()));
}

inline double db10(double power_ratio) { return 10.0 * std::log10(power_ratio); }

inline int num_channels(const MultichannelWaveform& x) {
  return static_cast<int>(x.size());
}

inline void check_equal_lengths(const MultichannelWaveform& x, const char* ctx) {
  for (size_t c = 1; c < x.size(); ++c)
    if (x[c].size() != x[0].size()) fail("alignment", std::string(ctx) + ": channel lengths differ");
}

}  // namespace arraybench

#endif  // ARRAYBENCH_COMMON_H_
