// include/arraybench/metrics.h

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

#ifndef ARRAYBENCH_METRICS_H_
#define ARRAYBENCH_METRICS_H_

#include <string>
#include <vector>

#include "arraybench/common.h"

namespace arraybench {

inline constexpr double kMetricCapDb = 100.0;

// Scale-invariant SDR: project, measure, cap at +100 dB on zero residual.
double si_sdr(const Waveform& reference, const Waveform& estimate);

struct BssEval {
  double sdr = 0.0;
  double sar = 0.0;  // equals sdr in this single-reference setting
};

// Projects the estimate onto the span of the reference delayed by
// 0..filter_taps-1 samples (Toeplitz normal equations); the residual is the
// artifact term. With no interferer subspace SDR == SAR.
BssEval bss_eval_single(const Waveform& reference, const Waveform& estimate,
                        int filter_taps = 512);

// Short-time objective intelligibility (standard, non-extended variant):
// 10 kHz resampling, 40 dB silent-frame removal, 15 one-third-octave bands
// from 150 Hz, 384 ms segments, clipped normalized correlation.
double stoi(const Waveform& reference, const Waveform& estimate, double sample_rate);

// Windowed-sinc rate conversion (also used by STOI's 10 kHz front end).
Waveform resample_sinc(const Waveform& x, double fs_in, double fs_out);

struct MetricsReport {
  double si_sdr = 0.0;
  double si_sdri = 0.0;
  double sdr = 0.0;
  double sar = 0.0;
  double stoi = 0.0;
  double snr_db = 0.0;
  int snr_bin = -1;  // index into kSnrBinLabels, -1 when outside [-1, 10]
};

inline constexpr int kNumSnrBins = 5;
extern const char* const kSnrBinLabels[kNumSnrBins];

// Half-open bins [-1,1), [1,3), [3,5), [5,7) and closed [7,10].
// Out-of-range SNR -> out-of-range error.
int snr_bin_of(double snr_db);

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;
};

struct BinSummary {
  std::string label;
  int count = 0;
  MetricStats si_sdr, si_sdri, sdr, sar, stoi;
};

struct StratifiedSummary {
  std::vector<BinSummary> bins;  // five SNR bins, present only for in-range data
  BinSummary overall;
};

// Per-bin and overall mean/std/count. `binned` must be false when any item's
// SNR falls outside the bins.
StratifiedSummary stratify(const std::vector<MetricsReport>& reports, bool binned = true);

}  // namespace arraybench

#endif  // ARRAYBENCH_METRICS_H_
