// include/arraybench/beamform.h

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

#ifndef ARRAYBENCH_BEAMFORM_H_
#define ARRAYBENCH_BEAMFORM_H_

#include <vector>

#include "arraybench/common.h"
#include "arraybench/geometry.h"
#include "arraybench/stft.h"

namespace arraybench {

// Unit-modulus far-field steering phases d_m(f) = exp(-j 2 pi f tau_m),
// with tau_m the centroid-referenced mic delays toward a direction.
struct SteeringVector {
  std::vector<std::vector<Complex>> d;  // [bin][mic]
  int num_bins() const { return static_cast<int>(d.size()); }
  int num_mics() const { return d.empty() ? 0 : static_cast<int>(d[0].size()); }
};

SteeringVector make_steering(const ArrayGeometry& g, const Direction& dir,
                             const StftConfig& cfg);

// Per-frequency Hermitian spatial covariance with diagonal loading.
struct SpatialCovariance {
  std::vector<std::vector<Complex>> r;  // [bin][m*M + n] row-major M x M
  int num_mics = 0;
  int frames_used = 0;
  double loading = 0.0;

  Complex& at(int bin, int row, int col) { return r[bin][row * num_mics + col]; }
  const Complex& at(int bin, int row, int col) const {
    return r[bin][row * num_mics + col];
  }
};

// R(f) = (1/T) sum_t X(f,t) X(f,t)^H + loading * tr(R)/M * I. Fewer frames
// than mics triggers a warning and heavier loading rather than failure.
SpatialCovariance estimate_covariance(const ComplexSpectrogram& s, double loading = 1e-3);

// Condition number lambda_max / lambda_min at one frequency bin.
double covariance_condition(const SpatialCovariance& r, int bin);

// Time-aligns every channel toward the direction (fractional all-pass
// advance) and averages with uniform 1/M weights. Output length == input.
Waveform das(const MultichannelWaveform& x, const ArrayGeometry& g, const Direction& dir);

// Capon weights w = R^{-1} d / (d^H R^{-1} d) for one bin.
std::vector<Complex> mvdr_weights(const SpatialCovariance& r, const SteeringVector& d, int bin);

// Distortionless minimum-variance beamformer: applies per-frequency Capon
// weights to the multichannel spectrogram and resynthesizes.
Waveform mvdr(const ComplexSpectrogram& s, const SteeringVector& d,
              const SpatialCovariance& r);

}  // namespace arraybench

#endif  // ARRAYBENCH_BEAMFORM_H_
