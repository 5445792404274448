// include/arraybench/spatial.h

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

#ifndef ARRAYBENCH_SPATIAL_H_
#define ARRAYBENCH_SPATIAL_H_

#include <utility>
#include <vector>

#include "arraybench/common.h"
#include "arraybench/geometry.h"
#include "arraybench/stft.h"

namespace arraybench {

// Whitened cross-correlation over all circular lags, stored centered:
// values[i] is the correlation at lag i - values.size()/2.
struct CrossCorrelation {
  std::vector<double> values;
  int center() const { return static_cast<int>(values.size()) / 2; }
  double at_lag(int lag) const { return values[center() + lag]; }
  int min_lag() const { return -center(); }
  int max_lag() const { return static_cast<int>(values.size()) - 1 - center(); }
};

// Phase-transform cross-correlation of a mic pair. Lag convention: if
// x_j(t) = x_i(t - D), the peak sits at lag +D (channel i leads j by D).
CrossCorrelation gcc_phat(const Waveform& xi, const Waveform& xj, double eps = 1e-8);

enum class GccMode { kWholeClip, kFrameAveraged };

// Per-pair whitened correlations restricted to `bins` lags centered at zero
// (bin k holds lag k - bins/2). Rows follow ArrayGeometry.pairs.
struct GccFeatures {
  std::vector<std::vector<double>> values;  // pairs x bins
  std::vector<std::pair<int, int>> pairs;
  int bins = 0;
  double feasible_lag = 0.0;  // physical search bound, samples
  double lag_of_bin(int k) const { return k - bins / 2; }
};

GccFeatures gcc_features(const MultichannelWaveform& x, const ArrayGeometry& g,
                         int bins = 64, GccMode mode = GccMode::kWholeClip,
                         double eps = 1e-8);

struct TdoaSet {
  std::vector<double> delays;      // samples, parabolic-refined
  std::vector<double> confidence;  // peak correlation values
};

// Argmax with 3-point parabolic refinement inside the physically feasible
// lag range; ties break toward the smaller |lag|.
TdoaSet estimate_tdoas(const GccFeatures& f);

struct DoaEstimate {
  Direction direction;
  double residual = 0.0;  // RMS TDOA misfit in samples
  bool degenerate = false;
};

// Far-field least squares: tau_ij = (r_i - r_j) . u / c * fs solved for u
// over all pairs, then normalized to a bearing.
DoaEstimate doa_least_squares(const TdoaSet& t, const ArrayGeometry& g);

}  // namespace arraybench

#endif  // ARRAYBENCH_SPATIAL_H_
