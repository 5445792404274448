// src/metrics.cc

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

#include "arraybench/metrics.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "arraybench/fft.h"

namespace arraybench {

const char* const kSnrBinLabels[kNumSnrBins] = {"[-1,1)", "[1,3)", "[3,5)",
                                                "[5,7)", "[7,10]"};

double si_sdr(const Waveform& reference, const Waveform& estimate) {
  if (reference.size() != estimate.size()) fail("alignment", "si_sdr lengths differ");
  const double ref_energy = energy(reference);
  if (ref_energy <= 0.0) fail("undefined-metric", "zero-energy reference");

  double dot = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) dot += estimate[i] * reference[i];
  const double alpha = dot / ref_energy;

  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    const double target = alpha * reference[i];
    const double err = target - estimate[i];
    num += target * target;
    den += err * err;
  }
  if (den == 0.0) return kMetricCapDb;
  return std::min(db10(num / den), kMetricCapDb);
}

BssEval bss_eval_single(const Waveform& reference, const Waveform& estimate,
                        int filter_taps) {
  if (reference.size() != estimate.size()) fail("alignment", "bss_eval lengths differ");
  if (filter_taps < 1) fail("invalid-config", "filter_taps must be >= 1");
  const size_t n = reference.size();
  if (energy(reference) <= 0.0) fail("undefined-metric", "zero-energy reference");

  const int taps = std::min<int>(filter_taps, static_cast<int>(n));
  const size_t p = next_pow2(n + taps);

  // Full-lag correlations through zero padding keep the normal equations
  // exactly Toeplitz.
  const std::vector<Complex> sref = fft_real(reference, p);
  const std::vector<Complex> sest = fft_real(estimate, p);
  std::vector<Complex> auto_spec(p), cross_spec(p);
  for (size_t k = 0; k < p; ++k) {
    auto_spec[k] = sref[k] * std::conj(sref[k]);
    cross_spec[k] = sest[k] * std::conj(sref[k]);
  }
  const Waveform acorr = ifft_to_real(std::move(auto_spec));
  const Waveform xcorr = ifft_to_real(std::move(cross_spec));

  Eigen::MatrixXd toep(taps, taps);
  Eigen::VectorXd rhs(taps);
  for (int i = 0; i < taps; ++i) {
    rhs(i) = xcorr[i];
    for (int j = 0; j < taps; ++j) toep(i, j) = acorr[std::abs(i - j)];
  }

  Eigen::VectorXd h = toep.ldlt().solve(rhs);
  double rel_residual = (toep * h - rhs).norm() / std::max(rhs.norm(), 1e-30);
  if (!h.allFinite() || rel_residual > 1e-6) {
    warn("bss_eval: singular projection normal equations, regularizing");
    const double ridge = 1e-8 * acorr[0];
    Eigen::MatrixXd reg = toep + ridge * Eigen::MatrixXd::Identity(taps, taps);
    h = reg.ldlt().solve(rhs);
  }

  // Project at full length n + taps - 1 so the least squares is exact.
  Waveform filt(taps);
  for (int i = 0; i < taps; ++i) filt[i] = h(i);
  Waveform s_target = fft_convolve(reference, filt);

  const size_t full = n + taps - 1;
  s_target.resize(full, 0.0);
  double target_energy = 0.0, artifact_energy = 0.0;
  for (size_t i = 0; i < full; ++i) {
    const double e = (i < n ? estimate[i] : 0.0) - s_target[i];
    target_energy += s_target[i] * s_target[i];
    artifact_energy += e * e;
  }

  BssEval out;
  if (artifact_energy == 0.0)
    out.sdr = kMetricCapDb;
  else if (target_energy == 0.0)
    out.sdr = -kMetricCapDb;
  else
    out.sdr = std::min(db10(target_energy / artifact_energy), kMetricCapDb);
  out.sar = out.sdr;  // no interferer subspace: e_interf = 0
  return out;
}

Waveform resample_sinc(const Waveform& x, double fs_in, double fs_out) {
  if (fs_in <= 0.0 || fs_out <= 0.0) fail("invalid-config", "bad sample rates");
  if (fs_in == fs_out) return x;
  const double ratio = fs_out / fs_in;
  const size_t out_len = static_cast<size_t>(std::floor(x.size() * ratio));
  const double cutoff = 0.5 * std::min(1.0, ratio);  // cycles per input sample
  const int half_width = 32;

  Waveform out(out_len, 0.0);
  for (size_t i = 0; i < out_len; ++i) {
    const double t = i / ratio;
    const int lo = static_cast<int>(std::ceil(t)) - half_width;
    const int hi = static_cast<int>(std::floor(t)) + half_width;
    double acc = 0.0;
    for (int m = std::max(lo, 0); m <= std::min<int>(hi, x.size() - 1); ++m) {
      const double tau = t - m;
      const double arg = 2.0 * kPi * cutoff * tau;
      const double sinc = (std::abs(arg) < 1e-12) ? 1.0 : std::sin(arg) / arg;
      // Blackman window over the kernel support.
      const double u = tau / (half_width + 1.0);
      const double win = 0.42 + 0.5 * std::cos(kPi * u) + 0.08 * std::cos(2.0 * kPi * u);
      acc += x[m] * 2.0 * cutoff * sinc * win;
    }
    out[i] = acc;
  }
  return out;
}

namespace {

constexpr int kStoiFrame = 256;   // 25.6 ms at 10 kHz
constexpr int kStoiHop = 128;
constexpr int kStoiFft = 512;
constexpr int kStoiBands = 15;
constexpr int kStoiSegment = 30;  // frames per 384 ms segment
constexpr double kStoiDynRange = 40.0;
constexpr double kStoiBeta = -15.0;  // lower SDR clip bound, dB

std::vector<Waveform> frame_signal(const Waveform& x) {
  std::vector<Waveform> frames;
  if (x.size() < kStoiFrame) return frames;
  for (size_t start = 0; start + kStoiFrame <= x.size(); start += kStoiHop)
    frames.emplace_back(x.begin() + start, x.begin() + start + kStoiFrame);
  return frames;
}

}  // namespace

double stoi(const Waveform& reference, const Waveform& estimate, double sample_rate) {
  if (reference.size() != estimate.size()) fail("alignment", "stoi lengths differ");
  if (energy(reference) <= 0.0) fail("undefined-metric", "all-silent reference");

  const Waveform ref10 = resample_sinc(reference, sample_rate, 10000.0);
  const Waveform est10 = resample_sinc(estimate, sample_rate, 10000.0);

  // Silent-frame removal driven by the reference energy profile.
  std::vector<double> window(kStoiFrame);
  for (int i = 0; i < kStoiFrame; ++i)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / kStoiFrame);

  const auto ref_frames = frame_signal(ref10);
  const auto est_frames = frame_signal(est10);
  std::vector<double> frame_db(ref_frames.size());
  double max_db = -std::numeric_limits<double>::infinity();
  for (size_t f = 0; f < ref_frames.size(); ++f) {
    double e = 0.0;
    for (int i = 0; i < kStoiFrame; ++i) {
      const double v = ref_frames[f][i] * window[i];
      e += v * v;
    }
    frame_db[f] = 10.0 * std::log10(std::max(e, 1e-300));
    max_db = std::max(max_db, frame_db[f]);
  }

  std::vector<size_t> kept;
  for (size_t f = 0; f < ref_frames.size(); ++f)
    if (frame_db[f] > max_db - kStoiDynRange) kept.push_back(f);
  if (kept.size() < kStoiSegment)
    fail("undefined-metric", "fewer than 384 ms of active speech");

  // One-third-octave band energies on the retained frames.
  std::vector<std::pair<int, int>> band_bins(kStoiBands);
  for (int b = 0; b < kStoiBands; ++b) {
    const double cf = 150.0 * std::pow(2.0, b / 3.0);
    const double fl = cf / std::pow(2.0, 1.0 / 6.0);
    const double fu = cf * std::pow(2.0, 1.0 / 6.0);
    int lo = static_cast<int>(std::ceil(fl * kStoiFft / 10000.0));
    int hi = static_cast<int>(std::ceil(fu * kStoiFft / 10000.0));
    band_bins[b] = {lo, std::min(hi, kStoiFft / 2 + 1)};
  }

  const size_t m = kept.size();
  std::vector<double> xb(kStoiBands * m), yb(kStoiBands * m);
  std::vector<Complex> buf(kStoiFft);
  for (size_t f = 0; f < m; ++f) {
    for (int which = 0; which < 2; ++which) {
      const Waveform& frame = which == 0 ? ref_frames[kept[f]] : est_frames[kept[f]];
      std::fill(buf.begin(), buf.end(), Complex(0, 0));
      for (int i = 0; i < kStoiFrame; ++i) buf[i] = Complex(frame[i] * window[i], 0.0);
      fft(&buf, false);
      for (int b = 0; b < kStoiBands; ++b) {
        double e = 0.0;
        for (int k = band_bins[b].first; k < band_bins[b].second; ++k)
          e += std::norm(buf[k]);
        (which == 0 ? xb : yb)[b * m + f] = std::sqrt(e);
      }
    }
  }

  // Clipped, normalized short-time correlation averaged over bands/segments.
  const double clip = 1.0 + std::pow(10.0, -kStoiBeta / 20.0);
  double sum = 0.0;
  int count = 0;
  for (int b = 0; b < kStoiBands; ++b) {
    for (size_t seg_end = kStoiSegment; seg_end <= m; ++seg_end) {
      const size_t s0 = seg_end - kStoiSegment;
      double ex = 0.0, ey = 0.0;
      for (int i = 0; i < kStoiSegment; ++i) {
        ex += xb[b * m + s0 + i] * xb[b * m + s0 + i];
        ey += yb[b * m + s0 + i] * yb[b * m + s0 + i];
      }
      const double alpha = std::sqrt(ex / std::max(ey, 1e-300));
      double mx = 0.0, my = 0.0;
      double seg_x[kStoiSegment], seg_y[kStoiSegment];
      for (int i = 0; i < kStoiSegment; ++i) {
        seg_x[i] = xb[b * m + s0 + i];
        seg_y[i] = std::min(alpha * yb[b * m + s0 + i], seg_x[i] * clip);
        mx += seg_x[i];
        my += seg_y[i];
      }
      mx /= kStoiSegment;
      my /= kStoiSegment;
      double sxy = 0.0, sxx = 0.0, syy = 0.0;
      for (int i = 0; i < kStoiSegment; ++i) {
        sxy += (seg_x[i] - mx) * (seg_y[i] - my);
        sxx += (seg_x[i] - mx) * (seg_x[i] - mx);
        syy += (seg_y[i] - my) * (seg_y[i] - my);
      }
      const double denom = std::sqrt(sxx * syy);
      sum += denom > 0.0 ? sxy / denom : 0.0;
      ++count;
    }
  }
  return sum / count;
}

int snr_bin_of(double snr_db) {
  if (snr_db < -1.0 || snr_db > 10.0)
    fail("out-of-range", "snr outside [-1, 10] dB");
  if (snr_db < 1.0) return 0;
  if (snr_db < 3.0) return 1;
  if (snr_db < 5.0) return 2;
  if (snr_db < 7.0) return 3;
  return 4;
}

namespace {

struct Welford {
  double sum = 0.0, sumsq = 0.0;
  int n = 0;
  void add(double v) {
    sum += v;
    sumsq += v * v;
    ++n;
  }
  MetricStats stats() const {
    MetricStats s;
    if (n == 0) return s;
    s.mean = sum / n;
    const double var = std::max(sumsq / n - s.mean * s.mean, 0.0);
    s.stddev = std::sqrt(var);
    return s;
  }
};

struct Acc {
  Welford si_sdr, si_sdri, sdr, sar, stoi;
  void add(const MetricsReport& r) {
    si_sdr.add(r.si_sdr);
    si_sdri.add(r.si_sdri);
    sdr.add(r.sdr);
    sar.add(r.sar);
    stoi.add(r.stoi);
  }
  BinSummary summary(const std::string& label) const {
    BinSummary b;
    b.label = label;
    b.count = si_sdr.n;
    b.si_sdr = si_sdr.stats();
    b.si_sdri = si_sdri.stats();
    b.sdr = sdr.stats();
    b.sar = sar.stats();
    b.stoi = stoi.stats();
    return b;
  }
};

}  // namespace

StratifiedSummary stratify(const std::vector<MetricsReport>& reports, bool binned) {
  StratifiedSummary out;
  Acc overall;
  std::vector<Acc> bins(kNumSnrBins);
  for (const auto& r : reports) {
    overall.add(r);
    if (binned) bins[snr_bin_of(r.snr_db)].add(r);
  }
  out.overall = overall.summary("overall");
  if (binned)
    for (int b = 0; b < kNumSnrBins; ++b)
      out.bins.push_back(bins[b].summary(kSnrBinLabels[b]));
  return out;
}

}  // namespace arraybench
