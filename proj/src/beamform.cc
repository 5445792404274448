// src/beamform.cc

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

#include "arraybench/beamform.h"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace arraybench {

namespace {

Eigen::MatrixXcd to_eigen(const SpatialCovariance& r, int bin) {
  const int m = r.num_mics;
  Eigen::MatrixXcd out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out(i, j) = r.at(bin, i, j);
  return out;
}

}  // namespace

SteeringVector make_steering(const ArrayGeometry& g, const Direction& dir,
                             const StftConfig& cfg) {
  validate_config(cfg);
  // Delays relative to channel 0 keep the beamformer output time-aligned
  // with the reference channel that masks and metrics use. The common
  // centroid offset cancels in the differences.
  const auto delays = farfield_delays(g, dir);  // samples
  const int bins = cfg.fft_size / 2 + 1;
  SteeringVector sv;
  sv.d.assign(bins, std::vector<Complex>(g.num_mics()));
  for (int k = 0; k < bins; ++k) {
    for (int m = 0; m < g.num_mics(); ++m) {
      const double phase = -2.0 * kPi * k * (delays[m] - delays[0]) / cfg.fft_size;
      sv.d[k][m] = Complex(std::cos(phase), std::sin(phase));
    }
  }
  return sv;
}

SpatialCovariance estimate_covariance(const ComplexSpectrogram& s, double loading) {
  const int m = s.num_channels;
  const int t = s.num_frames;
  if (m < 1 || t < 1) fail("alignment", "empty spectrogram");

  SpatialCovariance cov;
  cov.num_mics = m;
  cov.frames_used = t;
  cov.loading = loading;
  if (t < m) {
    warn("covariance estimated from fewer frames than channels; loading raised");
    cov.loading = std::max(loading, 0.1);
  }

  cov.r.assign(s.num_bins, std::vector<Complex>(m * m, Complex(0, 0)));
  for (int k = 0; k < s.num_bins; ++k) {
    auto& rk = cov.r[k];
    for (int f = 0; f < t; ++f) {
      for (int i = 0; i < m; ++i) {
        const Complex xi = s.at(i, k, f);
        for (int j = i; j < m; ++j) rk[i * m + j] += xi * std::conj(s.at(j, k, f));
      }
    }
    const double inv_t = 1.0 / static_cast<double>(t);
    double trace = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        rk[i * m + j] *= inv_t;
        if (j > i) rk[j * m + i] = std::conj(rk[i * m + j]);
      }
      rk[i * m + i] = Complex(rk[i * m + i].real(), 0.0);
      trace += rk[i * m + i].real();
    }
    // Diagonal loading keeps every bin invertible, silent bins included.
    const double load = cov.loading * std::max(trace / m, 1e-300) + 1e-30;
    for (int i = 0; i < m; ++i) rk[i * m + i] += load;
  }
  return cov;
}

double covariance_condition(const SpatialCovariance& r, int bin) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(r, bin));
  const auto& ev = es.eigenvalues();
  const double lo = ev.minCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return ev.maxCoeff() / lo;
}

Waveform das(const MultichannelWaveform& x, const ArrayGeometry& g, const Direction& dir) {
  if (num_channels(x) != g.num_mics())
    fail("alignment", "channel count does not match geometry");
  check_equal_lengths(x, "das");
  const auto delays = farfield_delays(g, dir);
  const int m = g.num_mics();
  Waveform out(x[0].size(), 0.0);
  for (int c = 0; c < m; ++c) {
    // Advance each channel by its arrival offset relative to channel 0, so
    // the sum stays aligned with the reference channel.
    const Waveform aligned = fractional_delay(x[c], delays[0] - delays[c]);
    for (size_t i = 0; i < out.size(); ++i) out[i] += aligned[i];
  }
  for (auto& v : out) v /= m;
  return out;
}

std::vector<Complex> mvdr_weights(const SpatialCovariance& r, const SteeringVector& d, int bin) {
  const int m = r.num_mics;
  Eigen::VectorXcd steer(m);
  for (int i = 0; i < m; ++i) steer(i) = d.d[bin][i];

  Eigen::LLT<Eigen::MatrixXcd> llt(to_eigen(r, bin));
  if (llt.info() != Eigen::Success)
    fail("mvdr-singular", "covariance not positive definite at bin " + std::to_string(bin));
  const Eigen::VectorXcd rinv_d = llt.solve(steer);
  const Complex denom = steer.dot(rinv_d);  // d^H R^{-1} d, real for Hermitian R
  if (!(denom.real() > 0.0))
    fail("mvdr-singular", "non-positive Capon denominator at bin " + std::to_string(bin));

  std::vector<Complex> w(m);
  for (int i = 0; i < m; ++i) w[i] = rinv_d(i) / denom.real();
  return w;
}

Waveform mvdr(const ComplexSpectrogram& s, const SteeringVector& d,
              const SpatialCovariance& r) {
  if (s.num_bins != d.num_bins() || s.num_bins != static_cast<int>(r.r.size()))
    fail("alignment", "bin counts differ");
  if (s.num_channels != r.num_mics || s.num_channels != d.num_mics())
    fail("alignment", "channel counts differ");

  ComplexSpectrogram out;
  out.num_channels = 1;
  out.num_bins = s.num_bins;
  out.num_frames = s.num_frames;
  out.signal_length = s.signal_length;
  out.config = s.config;
  out.data.assign(static_cast<size_t>(out.num_bins) * out.num_frames, Complex(0, 0));

  for (int k = 0; k < s.num_bins; ++k) {
    const auto w = mvdr_weights(r, d, k);
    for (int t = 0; t < s.num_frames; ++t) {
      Complex y(0, 0);
      for (int m = 0; m < s.num_channels; ++m) y += std::conj(w[m]) * s.at(m, k, t);
      out.at(0, k, t) = y;
    }
  }
  return istft(out);
}

}  // namespace arraybench
