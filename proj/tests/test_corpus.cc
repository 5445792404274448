// tests/test_corpus.cc

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

#include <filesystem>
#include <fstream>

#include "arraybench/corpus.h"
#include "arraybench/synth_source.h"
#include "arraybench/wav_io.h"

using namespace arraybench;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

CorpusConfig small_config(const std::string& out, int workers) {
  CorpusConfig cfg;
  cfg.out_dir = out;
  cfg.master_seed = 11;
  cfg.count = 3;
  cfg.regime = regime_by_name("hard");
  cfg.workers = workers;
  cfg.quiet = true;
  return cfg;
}

}  // namespace

TEST_CASE("synthetic source is speech-shaped and deterministic") {
  Rng a(7), b(7);
  const Waveform x = synth_speech_like(a, 4.0, 16000.0);
  const Waveform y = synth_speech_like(b, 4.0, 16000.0);
  REQUIRE(x.size() == 64000);
  CHECK(x == y);
  CHECK(rms(x) == doctest::Approx(0.05).epsilon(1e-6));

  Rng c(8);
  const Waveform z = synth_speech_like(c, 4.0, 16000.0);
  CHECK(x != z);

  // energy present in low and mid bands (rough occupancy check)
  double low = 0.0, mid = 0.0;
  for (size_t i = 1; i < x.size(); ++i) {
    const double d = x[i] - x[i - 1];
    mid += d * d;
    low += x[i] * x[i];
  }
  CHECK(low > 0.0);
  CHECK(mid > 0.0);
}

TEST_CASE("regimes carry the documented SNR ranges") {
  CHECK(regime_by_name("base").lo == 5.0);
  CHECK(regime_by_name("base").hi == 20.0);
  CHECK(regime_by_name("cl1").lo == 1.0);
  CHECK(regime_by_name("cl1").hi == 10.0);
  CHECK(regime_by_name("hard").lo == -1.0);
  CHECK(regime_by_name("hard").hi == 10.0);
  CHECK_THROWS_AS(regime_by_name("impossible"), Error);
}

TEST_CASE("method names round trip") {
  for (const char* name :
       {"mixture", "das_oracle", "mvdr_oracle", "das_estimated", "irm", "ibm"})
    CHECK(method_name(method_by_name(name)) == name);
  CHECK_THROWS_AS(method_by_name("nope"), Error);
}

TEST_CASE("corpus synthesis end to end") {
  const std::string dir_a = "/tmp/arraybench_corpus_a";
  const std::string dir_b = "/tmp/arraybench_corpus_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);

  const CorpusManifest ma = synth_corpus(small_config(dir_a, 1));
  const CorpusManifest mb = synth_corpus(small_config(dir_b, 2));
  CHECK(mb.count == ma.count);

  {  // scene layout and manifest counts
    CHECK(ma.count == 3);
    CHECK(ma.items.size() == 3);
    for (const auto& item : ma.items) {
      CHECK(fs::exists(dir_a + "/" + item.dir + "/mix.wav"));
      CHECK(fs::exists(dir_a + "/" + item.dir + "/target_ref.wav"));
      CHECK(fs::exists(dir_a + "/" + item.dir + "/interf.wav"));
      CHECK(fs::exists(dir_a + "/" + item.scene_json));
    }
    const WavData mix = read_wav(dir_a + "/scene_00000/mix.wav");
    CHECK(mix.channels.size() == 4);
    CHECK(mix.channels[0].size() == 64000);
    CHECK(mix.sample_rate == 16000.0);
    const WavData ref = read_wav(dir_a + "/scene_00000/target_ref.wav");
    CHECK(ref.channels.size() == 1);
  }

  {  // same seed and config give byte-identical outputs across workers
    CHECK(slurp(dir_a + "/manifest.json") == slurp(dir_b + "/manifest.json"));
    for (int i = 0; i < 3; ++i) {
      const std::string rel = "/scene_0000" + std::to_string(i);
      CHECK(slurp(dir_a + rel + "/scene.json") == slurp(dir_b + rel + "/scene.json"));
      CHECK(slurp(dir_a + rel + "/mix.wav") == slurp(dir_b + rel + "/mix.wav"));
      CHECK(slurp(dir_a + rel + "/target_ref.wav") == slurp(dir_b + rel + "/target_ref.wav"));
    }
  }

  {  // scene SNRs respect the regime and the manifest validates
    const CorpusManifest m = read_manifest(dir_a);
    CHECK(m.count == 3);
    for (const auto& item : m.items) {
      const SceneItem s = load_scene_item(dir_a, item);
      CHECK(s.snr_db >= -1.0);
      CHECK(s.snr_db <= 10.0);
      CHECK(s.array.num_mics() == 4);
      CHECK(s.mixture.size() == 4);
      CHECK(s.target_reference.size() == 64000);
    }
  }

  {  // manifest json round trips byte-stably
    const std::string raw = slurp(dir_a + "/manifest.json");
    const CorpusManifest m = manifest_from_json(nlohmann::json::parse(raw));
    CHECK(manifest_to_json(m).dump(2) + "\n" == raw);
  }

  {  // mixture method scores SI-SDRi of exactly zero
    BenchmarkOptions opts;
    opts.workers = 1;
    opts.quiet = true;
    const auto results = run_benchmark(dir_a, {Method::kMixture}, opts);
    REQUIRE(results.size() == 1);
    REQUIRE(results[0].items.size() == 3);
    for (const auto& item : results[0].items) {
      REQUIRE(!item.failed);
      CHECK(item.metrics.si_sdri == 0.0);
    }
    CHECK(results[0].summary.overall.count == 3);
  }

  {  // benchmark report regenerates identically from stored rows
    BenchmarkOptions opts;
    opts.workers = 2;
    opts.quiet = true;
    const auto results = run_benchmark(dir_a, {Method::kMixture, Method::kIrm}, opts);
    const std::string out = "/tmp/arraybench_results";
    fs::remove_all(out);
    write_benchmark_outputs(out, results);

    CHECK(fs::exists(out + "/results_mixture.json"));
    CHECK(fs::exists(out + "/results_irm.json"));
    CHECK(fs::exists(out + "/report.json"));
    CHECK(fs::exists(out + "/report.txt"));

    // reload rows, recompute summaries, rebuild the report
    std::vector<BenchmarkResult> reloaded;
    for (const char* name : {"irm", "mixture"}) {
      const auto j = nlohmann::json::parse(slurp(out + "/results_" + name + ".json"));
      reloaded.push_back(result_from_json(j));
    }
    std::swap(reloaded[0], reloaded[1]);  // restore original order
    const Report r1 = make_report(results);
    const Report r2 = make_report(reloaded);
    CHECK(r1.text == r2.text);
    CHECK(r1.json.dump(2) == r2.json.dump(2));

    // bin N values sum to the corpus size
    int bin_total = 0;
    for (const auto& b : results[1].summary.bins) bin_total += b.count;
    CHECK(bin_total == 3);

    // irm improves every item of this small corpus
    for (const auto& item : results[1].items) CHECK(item.metrics.si_sdri > 0.0);
  }

  {  // single-method report has one summary row
    BenchmarkOptions opts;
    opts.workers = 1;
    opts.quiet = true;
    const auto results = run_benchmark(dir_a, {Method::kMixture}, opts);
    const Report rep = make_report(results);
    CHECK(rep.json.at("methods").size() == 1);
    CHECK(rep.text.find("mixture") != std::string::npos);
  }
}

TEST_CASE("corpus requires at least two usable sources") {
  const std::string src_dir = "/tmp/arraybench_single_source";
  fs::remove_all(src_dir);
  fs::create_directories(src_dir);
  Rng rng(1);
  write_wav(src_dir + "/only.wav", synth_speech_like(rng, 5.0, 16000.0), 16000.0);

  CorpusConfig cfg = small_config("/tmp/arraybench_corpus_c", 1);
  cfg.source_dir = src_dir;
  CHECK_THROWS_AS(synth_corpus(cfg), Error);
}

TEST_CASE("file-backed sources are sliced into scenes") {
  const std::string src_dir = "/tmp/arraybench_sources";
  fs::remove_all(src_dir);
  fs::create_directories(src_dir);
  Rng rng(2);
  write_wav(src_dir + "/a.wav", synth_speech_like(rng, 6.0, 16000.0), 16000.0);
  write_wav(src_dir + "/b.wav", synth_speech_like(rng, 5.0, 16000.0), 16000.0);
  write_wav(src_dir + "/short.wav", synth_speech_like(rng, 1.0, 16000.0), 16000.0);

  const std::string out = "/tmp/arraybench_corpus_files";
  fs::remove_all(out);
  CorpusConfig cfg = small_config(out, 1);
  cfg.count = 2;
  cfg.source_dir = src_dir;
  const CorpusManifest m = synth_corpus(cfg);
  CHECK(m.sources.size() == 2);  // the short file is skipped

  const auto scene = nlohmann::json::parse(slurp(out + "/scene_00000/scene.json"));
  CHECK(scene.at("sources").at("target").at("kind") == "file");
  const std::string tpath = scene.at("sources").at("target").at("path");
  const std::string upath = scene.at("sources").at("interferer").at("path");
  CHECK(tpath != upath);  // distinct files for target and interferer
}
