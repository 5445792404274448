// include/arraybench/corpus.h

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

#ifndef ARRAYBENCH_CORPUS_H_
#define ARRAYBENCH_CORPUS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arraybench/common.h"
#include "arraybench/geometry.h"
#include "arraybench/metrics.h"
#include "arraybench/room_sim.h"
#include "json.hpp"

namespace arraybench {

// Runs fn(0..n-1) on a bounded pool; items are independent and results must
// be written by index so the outcome is worker-count invariant.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

// ARRAYBENCH_WORKERS overrides; otherwise hardware concurrency.
int default_workers();

struct SnrRegime {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
};

// base 5..20 dB, cl1 1..10 dB, hard -1..10 dB.
SnrRegime regime_by_name(const std::string& name);

struct CorpusConfig {
  std::string out_dir;
  std::string source_dir;  // empty -> built-in synthetic sources
  uint64_t master_seed = 0;
  int count = 0;
  SnrRegime regime = regime_by_name("hard");
  int workers = 0;  // 0 -> default_workers()
  double clip_seconds = 4.0;
  double sample_rate = 16000.0;
  double noise_floor_db = -50.0;
  double tail_factor = 1.5;
  AbsorptionModel absorption_model = AbsorptionModel::kSabine;
  bool quiet = false;
};

struct SourceEntry {
  std::string path;
  double duration_seconds = 0.0;
};

struct ManifestItem {
  int index = 0;
  std::string dir;
  std::string scene_json;
};

struct CorpusManifest {
  uint64_t master_seed = 0;
  int count = 0;
  SnrRegime regime;
  double clip_seconds = 4.0;
  double sample_rate = 16000.0;
  double noise_floor_db = -50.0;
  double tail_factor = 1.5;
  AbsorptionModel absorption_model = AbsorptionModel::kSabine;
  ArrayGeometry array;
  std::vector<SourceEntry> sources;  // empty when synthetic
  std::vector<ManifestItem> items;
};

nlohmann::ordered_json manifest_to_json(const CorpusManifest& m);
CorpusManifest manifest_from_json(const nlohmann::json& j);

// Reads <dir>/manifest.json and checks every referenced file exists.
CorpusManifest read_manifest(const std::string& corpus_dir);

// The reference device: tetrahedral, 5 cm base circle, 8 cm apex, 16 kHz.
ArrayGeometry default_array();

// Synthesizes `count` scene directories (mix.wav, target_ref.wav, interf.wav,
// scene.json) plus manifest.json. Deterministic in (master_seed, config),
// independent of worker count.
CorpusManifest synth_corpus(const CorpusConfig& cfg);

// One scene loaded back from disk.
struct SceneItem {
  int index = 0;
  MultichannelWaveform mixture;
  Waveform target_reference;
  ArrayGeometry array;
  Direction oracle_direction;
  double snr_db = 0.0;
  double sample_rate = 16000.0;
  nlohmann::json scene;
};

SceneItem load_scene_item(const std::string& corpus_dir, const ManifestItem& item);

enum class Method { kMixture, kDasOracle, kMvdrOracle, kDasEstimated, kIrm, kIbm };

std::string method_name(Method m);
Method method_by_name(const std::string& name);

struct BenchmarkOptions {
  double loading = 1e-3;        // MVDR diagonal loading
  int bss_filter_taps = 512;
  int irm_exponent = 1;
  double ibm_threshold_db = 0.0;
  int workers = 0;
  std::string estimates_dir;    // when set, writes est.wav per item
  bool quiet = false;
};

struct ItemResult {
  int index = 0;
  bool failed = false;
  std::string error;
  MetricsReport metrics;
};

struct BenchmarkResult {
  std::string method;
  std::vector<ItemResult> items;
  StratifiedSummary summary;
  bool binned = false;
  double wall_seconds = 0.0;  // not serialized; reports stay byte-stable
  nlohmann::ordered_json config_echo;
};

// Produces the estimate for one method on one loaded scene.
Waveform estimate_for(Method method, const SceneItem& item, const BenchmarkOptions& opts);

std::vector<BenchmarkResult> run_benchmark(const std::string& corpus_dir,
                                           const std::vector<Method>& methods,
                                           const BenchmarkOptions& opts = {});

nlohmann::ordered_json result_to_json(const BenchmarkResult& r);
BenchmarkResult result_from_json(const nlohmann::json& j);

struct Report {
  std::string text;
  nlohmann::ordered_json json;
};

// Method x metric table plus per-bin tables; a pure function of the results.
Report make_report(std::vector<BenchmarkResult> results);

void write_benchmark_outputs(const std::string& out_dir,
                             const std::vector<BenchmarkResult>& results);

}  // namespace arraybench

#endif  // ARRAYBENCH_CORPUS_H_
