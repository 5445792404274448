// tests/test_beamform.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>

#include "arraybench/beamform.h"
#include "arraybench/metrics.h"
#include "arraybench/room_sim.h"
#include "arraybench/stft.h"
#include "arraybench/synth_source.h"
#include "arraybench/fft.h"

using namespace arraybench;

namespace {

Waveform white_noise(size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Waveform x(n);
  for (auto& v : x) v = dist(rng);
  return x;
}

bool throws_kind(const std::function<void()>& fn, const std::string& kind) {
  try {
    fn();
  } catch (const Error& e) {
    return std::string(e.what()).rfind(kind + ":", 0) == 0;
  }
  return false;
}

// Hermitian positive definite covariance with random structure.
SpatialCovariance random_pd_covariance(int bins, int mics, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  SpatialCovariance cov;
  cov.num_mics = mics;
  cov.frames_used = 100;
  cov.loading = 0.0;
  cov.r.assign(bins, std::vector<Complex>(mics * mics, Complex(0, 0)));
  for (int k = 0; k < bins; ++k) {
    std::vector<Complex> a(mics * mics);
    for (auto& v : a) v = Complex(dist(rng), dist(rng));
    for (int i = 0; i < mics; ++i) {
      for (int j = 0; j < mics; ++j) {
        Complex acc(0, 0);
        for (int l = 0; l < mics; ++l) acc += a[i * mics + l] * std::conj(a[j * mics + l]);
        cov.at(k, i, j) = acc;
      }
      cov.at(k, i, i) += 0.1;
    }
  }
  return cov;
}

}  // namespace

TEST_CASE("das passes a constant common signal through unchanged") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  const Waveform dc(2048, 0.7);
  const MultichannelWaveform x{dc, dc, dc, dc};
  // weights sum to one, so the common component survives any steering
  for (const Direction dir : {Direction{0.0, 0.0}, Direction{0.8, 0.3}}) {
    const Waveform y = das(x, g, dir);
    for (size_t i = 32; i + 32 < y.size(); ++i) CHECK(y[i] == doctest::Approx(0.7).epsilon(1e-9));
  }
}

TEST_CASE("das output aligns a true plane wave with channel 0") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  const Direction dir{0.4, 0.1};
  const auto delays = farfield_delays(g, dir);

  // smooth tapered multi-tone: spectrally compact, so chained fractional
  // shifts compose without broadband leakage
  Waveform s(8192, 0.0);
  const double freqs[5] = {400.0, 900.0, 1700.0, 2500.0, 3300.0};
  for (size_t i = 0; i < s.size(); ++i)
    for (int j = 0; j < 5; ++j)
      s[i] += std::sin(2.0 * kPi * freqs[j] * i / 16000.0 + 0.7 * j) / (1.0 + j);
  for (int i = 0; i < 512; ++i) {
    const double w = 0.5 - 0.5 * std::cos(kPi * i / 512.0);
    s[i] *= w;
    s[s.size() - 1 - i] *= w;
  }

  MultichannelWaveform x(4);
  for (int m = 0; m < 4; ++m) x[m] = fractional_delay(s, delays[m]);
  const Waveform y = das(x, g, dir);
  double num = 0.0, den = 0.0;
  for (size_t i = 600; i + 600 < s.size(); ++i) {
    num += (y[i] - x[0][i]) * (y[i] - x[0][i]);
    den += x[0][i] * x[0][i];
  }
  CHECK(std::sqrt(num / den) < 1e-6);
}

TEST_CASE("das is homogeneous in a common channel gain") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  MultichannelWaveform x;
  for (int m = 0; m < 4; ++m) x.push_back(white_noise(2048, 50 + m));
  MultichannelWaveform x2 = x;
  for (auto& ch : x2)
    for (auto& v : ch) v *= 3.0;
  const Waveform y = das(x, g, {0.2, 0.0});
  const Waveform y2 = das(x2, g, {0.2, 0.0});
  for (size_t i = 0; i < y.size(); i += 61)
    CHECK(y2[i] == doctest::Approx(3.0 * y[i]).epsilon(1e-12));
}

TEST_CASE("oracle-steered das gains about 6 dB on spatially white noise") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  const Direction dir{-0.3, 0.15};
  const auto delays = farfield_delays(g, dir);

  const size_t n = 32000;
  Waveform s = white_noise(n, 1);
  MultichannelWaveform signal(4), noise(4);
  for (int m = 0; m < 4; ++m) {
    signal[m] = fractional_delay(s, delays[m]);
    noise[m] = white_noise(n, 100 + m);
  }
  // the beamformer is linear, so SNR gain can be measured per component
  const Waveform ys = das(signal, g, dir);
  const Waveform yn = das(noise, g, dir);
  const double snr_in = energy(signal[0]) / energy(noise[0]);
  const double snr_out = energy(ys) / energy(yn);
  const double gain_db = db10(snr_out / snr_in);
  CHECK(gain_db == doctest::Approx(10.0 * std::log10(4.0)).epsilon(0.5 / 6.0));
}

TEST_CASE("covariance of a single impulse frame") {
  ComplexSpectrogram s;
  s.num_channels = 4;
  s.num_bins = 3;
  s.num_frames = 1;
  s.config = StftConfig{};
  s.data.assign(12, Complex(0, 0));
  for (int k = 0; k < 3; ++k) s.at(0, k, 0) = Complex(1.0, 0.0);  // channel 0 only

  const SpatialCovariance cov = estimate_covariance(s, 1e-3);
  // fewer frames than mics: loading is raised to 0.1
  CHECK(cov.loading == doctest::Approx(0.1));
  const double load = 0.1 * (1.0 / 4.0);
  CHECK(cov.at(0, 0, 0).real() == doctest::Approx(1.0 + load).epsilon(1e-9));
  CHECK(cov.at(0, 1, 1).real() == doctest::Approx(load).epsilon(1e-9));
  CHECK(std::abs(cov.at(0, 0, 1)) < 1e-12);
}

TEST_CASE("covariance of spatially white noise approaches a scaled identity") {
  std::mt19937 rng(11);
  std::normal_distribution<double> dist(0.0, M_SQRT1_2);
  ComplexSpectrogram s;
  s.num_channels = 4;
  s.num_bins = 2;
  s.num_frames = 10000;
  s.config = StftConfig{};
  s.data.resize(static_cast<size_t>(4) * 2 * 10000);
  for (auto& v : s.data) v = Complex(dist(rng), dist(rng));  // unit variance

  const SpatialCovariance cov = estimate_covariance(s, 0.0);
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 4; ++i) {
      CHECK(cov.at(k, i, i).real() == doctest::Approx(1.0).epsilon(0.05));
      for (int j = 0; j < 4; ++j) {
        if (i != j) CHECK(std::abs(cov.at(k, i, j)) < 0.05);
        // exact Hermitian symmetry by construction
        CHECK(cov.at(k, i, j) == std::conj(cov.at(k, j, i)));
      }
    }
    CHECK(covariance_condition(cov, k) < 1.5);
  }
}

TEST_CASE("mvdr with identity covariance reduces to das weights") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  const StftConfig cfg;
  const SteeringVector d = make_steering(g, {0.5, -0.1}, cfg);

  SpatialCovariance eye;
  eye.num_mics = 4;
  eye.frames_used = 100;
  eye.r.assign(d.num_bins(), std::vector<Complex>(16, Complex(0, 0)));
  for (int k = 0; k < d.num_bins(); ++k)
    for (int i = 0; i < 4; ++i) eye.at(k, i, i) = Complex(1.0, 0.0);

  for (int k = 0; k < d.num_bins(); k += 16) {
    const auto w = mvdr_weights(eye, d, k);
    for (int m = 0; m < 4; ++m) CHECK(std::abs(w[m] - d.d[k][m] / 4.0) < 1e-12);
  }
}

TEST_CASE("mvdr weights satisfy the distortionless constraint") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  const StftConfig cfg;
  const SteeringVector d = make_steering(g, {-0.7, 0.2}, cfg);
  const SpatialCovariance cov = random_pd_covariance(d.num_bins(), 4, 3);
  for (int k = 0; k < d.num_bins(); ++k) {
    const auto w = mvdr_weights(cov, d, k);
    Complex resp(0, 0);
    for (int m = 0; m < 4; ++m) resp += std::conj(w[m]) * d.d[k][m];
    CHECK(std::abs(resp - Complex(1.0, 0.0)) < 1e-6);
  }
}

TEST_CASE("capon weights never exceed das output power under the same covariance") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  const StftConfig cfg;
  const SteeringVector d = make_steering(g, {0.1, 0.05}, cfg);
  const SpatialCovariance cov = random_pd_covariance(d.num_bins(), 4, 5);
  for (int k = 0; k < d.num_bins(); k += 7) {
    const auto w = mvdr_weights(cov, d, k);
    auto quad = [&](const std::vector<Complex>& v) {
      Complex acc(0, 0);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += std::conj(v[i]) * cov.at(k, i, j) * v[j];
      return acc.real();
    };
    std::vector<Complex> das_w(4);
    for (int m = 0; m < 4; ++m) das_w[m] = d.d[k][m] / 4.0;
    CHECK(quad(w) <= quad(das_w) + 1e-12);
  }
}

TEST_CASE("non positive definite covariance raises a solver error") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  const SteeringVector d = make_steering(g, {0.0, 0.0}, StftConfig{});
  SpatialCovariance bad;
  bad.num_mics = 4;
  bad.frames_used = 10;
  bad.r.assign(d.num_bins(), std::vector<Complex>(16, Complex(0, 0)));
  for (int k = 0; k < d.num_bins(); ++k)
    for (int i = 0; i < 4; ++i) bad.at(k, i, i) = Complex(-1.0, 0.0);
  CHECK(throws_kind([&] { mvdr_weights(bad, d, 0); }, "mvdr-singular"));
}

TEST_CASE("beamforming helps when its assumptions hold") {
  // anechoic scene, true direction: das must beat the raw mixture
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  Rng rng(21);
  SceneSample scene = sample_scene(rng);
  scene.room.max_image_order = 0;

  Rng srng(22);
  const Waveform target_src = synth_speech_like(srng, 4.0, 16000.0);
  const Waveform interf_src = synth_speech_like(srng, 4.0, 16000.0);
  Rng mix_rng(23);
  const SceneRecording rec =
      render_scene(scene, g, target_src, interf_src, 0.0, -50.0, mix_rng);

  const Waveform est = das(rec.mixture, g, scene.target.direction_from_array);
  const double si_est = si_sdr(rec.clean_reference, est);
  const double si_mix = si_sdr(rec.clean_reference, rec.mixture[0]);
  CHECK(si_est > si_mix);
}

TEST_CASE("mvdr pipeline runs end to end on a rendered scene") {
  const ArrayGeometry g = tetrahedral_array(0.05, 0.08, 16000.0);
  Rng rng(31);
  SceneSample scene = sample_scene(rng);
  Rng srng(32);
  const Waveform target_src = synth_speech_like(srng, 4.0, 16000.0);
  const Waveform interf_src = synth_speech_like(srng, 4.0, 16000.0);
  Rng mix_rng(33);
  const SceneRecording rec =
      render_scene(scene, g, target_src, interf_src, 5.0, -50.0, mix_rng);

  StftConfig cfg;
  const ComplexSpectrogram spec = stft(rec.mixture, cfg);
  const SpatialCovariance cov = estimate_covariance(spec, 1e-3);
  const SteeringVector steer = make_steering(g, scene.target.direction_from_array, cfg);
  const Waveform y = mvdr(spec, steer, cov);
  CHECK(y.size() == rec.mixture[0].size());
  CHECK(energy(y) > 0.0);
}
