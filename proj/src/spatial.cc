// src/spatial.cc

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

#include "arraybench/spatial.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "arraybench/fft.h"

namespace arraybench {

namespace {

// Recenter an FFT-ordered circular correlation (lag l at index l mod n)
// so index i holds lag i - n/2.
std::vector<double> recenter(const Waveform& fft_order) {
  const size_t n = fft_order.size();
  std::vector<double> out(n);
  const size_t half = n / 2;
  for (size_t i = 0; i < n; ++i) {
    const int lag = static_cast<int>(i) - static_cast<int>(half);
    out[i] = fft_order[(lag + n) % n];
  }
  return out;
}

}  // namespace

CrossCorrelation gcc_phat(const Waveform& xi, const Waveform& xj, double eps) {
  if (xi.size() != xj.size()) fail("alignment", "gcc_phat lengths differ");
  if (xi.empty()) fail("degenerate-signal", "empty input");
  if (eps <= 0.0) fail("invalid-config", "eps must be positive");
  if (energy(xi) <= 0.0 || energy(xj) <= 0.0)
    fail("degenerate-signal", "zero-energy input to gcc_phat");

  const size_t p = next_pow2(xi.size());
  std::vector<Complex> si = fft_real(xi, p);
  std::vector<Complex> sj = fft_real(xj, p);
  // Whitened cross-power conj(X_i) * X_j puts the peak at +D when j lags i.
  for (size_t k = 0; k < p; ++k) {
    const Complex cross = std::conj(si[k]) * sj[k];
    si[k] = cross / (std::abs(cross) + eps);
  }
  CrossCorrelation out;
  out.values = recenter(ifft_to_real(std::move(si)));
  return out;
}

GccFeatures gcc_features(const MultichannelWaveform& x, const ArrayGeometry& g,
                         int bins, GccMode mode, double eps) {
  if (bins < 2 || bins % 2 != 0) fail("invalid-config", "bins must be even and >= 2");
  if (num_channels(x) != g.num_mics())
    fail("alignment", "channel count does not match geometry");
  check_equal_lengths(x, "gcc_features");

  GccFeatures f;
  f.pairs = g.pairs;
  f.bins = bins;
  f.feasible_lag = std::ceil(g.max_delay_samples()) + 1.0;

  if (mode == GccMode::kWholeClip) {
    for (const auto& [i, j] : g.pairs) {
      const CrossCorrelation corr = gcc_phat(x[i], x[j], eps);
      std::vector<double> row(bins);
      for (int k = 0; k < bins; ++k) row[k] = corr.at_lag(k - bins / 2);
      f.values.push_back(std::move(row));
    }
    return f;
  }

  // Frame-averaged variant: whitened cross-spectra averaged over STFT frames.
  StftConfig cfg;
  const ComplexSpectrogram s = stft(x, cfg);
  const int n = cfg.fft_size;
  if (bins > n) fail("invalid-config", "bins exceed fft size");
  for (const auto& [i, j] : g.pairs) {
    std::vector<Complex> avg(n, Complex(0, 0));
    for (int k = 0; k < s.num_bins; ++k) {
      Complex acc(0, 0);
      for (int t = 0; t < s.num_frames; ++t) {
        const Complex cross = std::conj(s.at(i, k, t)) * s.at(j, k, t);
        acc += cross / (std::abs(cross) + eps);
      }
      acc /= static_cast<double>(s.num_frames);
      avg[k] = acc;
      if (k > 0 && k < n / 2) avg[n - k] = std::conj(acc);
    }
    Waveform corr = ifft_to_real(std::move(avg));
    const auto centered = recenter(corr);
    std::vector<double> row(bins);
    for (int k = 0; k < bins; ++k) row[k] = centered[n / 2 + k - bins / 2];
    f.values.push_back(std::move(row));
  }
  return f;
}

TdoaSet estimate_tdoas(const GccFeatures& f) {
  TdoaSet out;
  const int half = f.bins / 2;
  const int search = std::min(static_cast<int>(f.feasible_lag), half - 2);
  for (const auto& row : f.values) {
    // Scan lags outward from zero so exact ties resolve to the smaller |lag|.
    int best_lag = 0;
    double best = row[half];
    for (int l = 1; l <= search; ++l) {
      for (const int lag : {-l, l}) {
        const double v = row[half + lag];
        if (v > best) {
          best = v;
          best_lag = lag;
        }
      }
    }
    const double yl = row[half + best_lag - 1];
    const double yc = row[half + best_lag];
    const double yr = row[half + best_lag + 1];
    const double denom = yl - 2.0 * yc + yr;
    double delta = 0.0;
    if (std::abs(denom) > 1e-12) delta = 0.5 * (yl - yr) / denom;
    delta = std::clamp(delta, -0.5, 0.5);
    out.delays.push_back(best_lag + delta);
    out.confidence.push_back(yc);
  }
  return out;
}

DoaEstimate doa_least_squares(const TdoaSet& t, const ArrayGeometry& g) {
  const int n = static_cast<int>(g.pairs.size());
  if (static_cast<int>(t.delays.size()) != n)
    fail("alignment", "TDOA count does not match pair count");
  if (n < 3) fail("singular-geometry", "need at least 3 baselines");

  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  const double scale = g.sample_rate / g.speed_of_sound;
  for (int p = 0; p < n; ++p) {
    const auto& [i, j] = g.pairs[p];
    for (int k = 0; k < 3; ++k)
      a(p, k) = (g.mic_positions[i][k] - g.mic_positions[j][k]) * scale;
    b(p) = t.delays[p];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < 3) fail("singular-geometry", "baselines do not span 3-D");
  const Eigen::Vector3d u = qr.solve(b);

  DoaEstimate est;
  const double norm = u.norm();
  if (norm < 1e-9) {
    est.degenerate = true;
    est.residual = std::numeric_limits<double>::infinity();
    return est;
  }
  est.direction.azimuth = std::atan2(u(1), u(0));
  est.direction.elevation = std::asin(std::clamp(u(2) / norm, -1.0, 1.0));
  est.residual = std::sqrt((a * u - b).squaredNorm() / n);
  return est;
}

}  // namespace arraybench
