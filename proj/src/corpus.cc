// src/corpus.cc

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

#include "arraybench/corpus.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "arraybench/beamform.h"
#include "arraybench/mask.h"
#include "arraybench/spatial.h"
#include "arraybench/stft.h"
#include "arraybench/synth_source.h"
#include "arraybench/wav_io.h"

namespace fs = std::filesystem;

namespace arraybench {

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int count = std::min(workers, n);
  std::vector<std::string> errors(count);
  for (int w = 0; w < count; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          const int i = next.fetch_add(1);
          if (i >= n) return;
          fn(i);
        }
      } catch (const std::exception& e) {
        errors[w] = e.what();
        next.store(n);  // drain remaining work
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw Error(e);
}

int default_workers() {
  if (const char* env = std::getenv("ARRAYBENCH_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SnrRegime regime_by_name(const std::string& name) {
  if (name == "base") return {"base", 5.0, 20.0};
  if (name == "cl1") return {"cl1", 1.0, 10.0};
  if (name == "hard") return {"hard", -1.0, 10.0};
  fail("corpus", "unknown regime '" + name + "' (expected base|cl1|hard)");
}

ArrayGeometry default_array() { return tetrahedral_array(0.05, 0.08, 16000.0); }

namespace {

std::string absorption_model_name(AbsorptionModel m) {
  return m == AbsorptionModel::kSabine ? "sabine" : "eyring";
}

AbsorptionModel absorption_model_by_name(const std::string& s) {
  if (s == "sabine") return AbsorptionModel::kSabine;
  if (s == "eyring") return AbsorptionModel::kEyring;
  fail("corpus", "unknown absorption model " + s);
}

std::string item_dir_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene_%05d", index);
  return buf;
}

double deg(double radians) { return radians * 180.0 / kPi; }
double rad(double degrees) { return degrees * kPi / 180.0; }

nlohmann::ordered_json placement_to_json(const SourcePlacement& p) {
  nlohmann::ordered_json j;
  j["position"] = p.position;
  j["azimuth_deg"] = deg(p.direction_from_array.azimuth);
  j["elevation_deg"] = deg(p.direction_from_array.elevation);
  j["distance"] = p.distance;
  return j;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail("corpus", "cannot write " + path);
  f << content;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail("corpus", "cannot open " + path);
  nlohmann::json j;
  f >> j;
  return j;
}

// Dry source material for one scene: either two synthetic voices or two
// distinct files from the registry.
struct SourceDraw {
  Waveform target, interferer;
  nlohmann::ordered_json target_desc, interferer_desc;
};

SourceDraw draw_sources(const CorpusConfig& cfg, const std::vector<SourceEntry>& registry,
                        Rng& rng) {
  SourceDraw draw;
  const size_t want = static_cast<size_t>(cfg.clip_seconds * cfg.sample_rate);
  if (registry.empty()) {
    draw.target = synth_speech_like(rng, cfg.clip_seconds, cfg.sample_rate);
    draw.interferer = synth_speech_like(rng, cfg.clip_seconds, cfg.sample_rate);
    draw.target_desc = {{"kind", "synthetic"}};
    draw.interferer_desc = {{"kind", "synthetic"}};
    return draw;
  }

  const int n = static_cast<int>(registry.size());
  const int ti = rng.uniform_int(0, n - 1);
  int ui = rng.uniform_int(0, n - 2);
  if (ui >= ti) ++ui;  // distinct files for target and interferer

  auto slice = [&](const SourceEntry& entry, nlohmann::ordered_json* desc) {
    WavData w = read_wav(entry.path);
    if (w.channels.size() != 1) fail("corpus", "source must be mono: " + entry.path);
    Waveform x = std::move(w.channels[0]);
    if (w.sample_rate != cfg.sample_rate)
      x = resample_sinc(x, w.sample_rate, cfg.sample_rate);
    if (x.size() < want) fail("corpus", "source shorter than clip: " + entry.path);
    const size_t max_off = x.size() - want;
    const size_t off = static_cast<size_t>(rng.uniform() * static_cast<double>(max_off + 1));
    (*desc)["kind"] = "file";
    (*desc)["path"] = entry.path;
    (*desc)["offset_seconds"] = off / cfg.sample_rate;
    return Waveform(x.begin() + off, x.begin() + off + want);
  };
  draw.target = slice(registry[ti], &draw.target_desc);
  draw.interferer = slice(registry[ui], &draw.interferer_desc);
  return draw;
}

std::vector<SourceEntry> scan_sources(const CorpusConfig& cfg) {
  std::vector<SourceEntry> registry;
  if (cfg.source_dir.empty()) return registry;
  if (!fs::is_directory(cfg.source_dir))
    fail("corpus", "source directory not found: " + cfg.source_dir);
  std::vector<std::string> paths;
  for (const auto& e : fs::directory_iterator(cfg.source_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".wav")
      paths.push_back(e.path().string());
  }
  std::sort(paths.begin(), paths.end());  // deterministic registry order
  for (const auto& p : paths) {
    WavData w = read_wav(p);
    const double dur = w.duration_seconds();
    if (dur + 1e-9 < cfg.clip_seconds) {
      warn("skipping short source " + p);
      continue;
    }
    registry.push_back({p, dur});
  }
  if (registry.size() < 2)
    fail("corpus", "need at least 2 source WAVs of >= 4 s (or omit --sources)");
  return registry;
}

}  // namespace

nlohmann::ordered_json manifest_to_json(const CorpusManifest& m) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["master_seed"] = m.master_seed;
  j["count"] = m.count;
  j["regime"] = {{"name", m.regime.name}, {"snr_lo", m.regime.lo}, {"snr_hi", m.regime.hi}};
  j["sample_rate"] = m.sample_rate;
  j["clip_seconds"] = m.clip_seconds;
  j["noise_floor_db"] = m.noise_floor_db;
  j["tail_factor"] = m.tail_factor;
  j["absorption_model"] = absorption_model_name(m.absorption_model);
  j["array"] = geometry_to_json(m.array);
  nlohmann::ordered_json sources = nlohmann::ordered_json::array();
  for (const auto& s : m.sources)
    sources.push_back({{"path", s.path}, {"duration_seconds", s.duration_seconds}});
  j["sources"] = sources;
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& it : m.items)
    items.push_back({{"index", it.index}, {"dir", it.dir}, {"scene", it.scene_json}});
  j["items"] = items;
  return j;
}

CorpusManifest manifest_from_json(const nlohmann::json& j) {
  CorpusManifest m;
  m.master_seed = j.at("master_seed").get<uint64_t>();
  m.count = j.at("count").get<int>();
  m.regime = {j.at("regime").at("name").get<std::string>(),
              j.at("regime").at("snr_lo").get<double>(),
              j.at("regime").at("snr_hi").get<double>()};
  m.sample_rate = j.at("sample_rate").get<double>();
  m.clip_seconds = j.at("clip_seconds").get<double>();
  m.noise_floor_db = j.at("noise_floor_db").get<double>();
  m.tail_factor = j.at("tail_factor").get<double>();
  m.absorption_model = absorption_model_by_name(j.at("absorption_model").get<std::string>());
  m.array = geometry_from_json(j.at("array"));
  for (const auto& s : j.at("sources"))
    m.sources.push_back({s.at("path").get<std::string>(), s.at("duration_seconds").get<double>()});
  for (const auto& it : j.at("items"))
    m.items.push_back({it.at("index").get<int>(), it.at("dir").get<std::string>(),
                       it.at("scene").get<std::string>()});
  if (static_cast<int>(m.items.size()) != m.count)
    fail("corpus", "manifest count does not match item list");
  return m;
}

CorpusManifest read_manifest(const std::string& corpus_dir) {
  const CorpusManifest m = manifest_from_json(read_json(corpus_dir + "/manifest.json"));
  for (const auto& it : m.items) {
    const std::string scene_path = corpus_dir + "/" + it.scene_json;
    if (!fs::exists(scene_path)) fail("corpus", "missing " + scene_path);
    const auto scene = read_json(scene_path);
    for (const char* key : {"mixture", "target_reference"}) {
      const std::string wav =
          corpus_dir + "/" + it.dir + "/" + scene.at("files").at(key).get<std::string>();
      if (!fs::exists(wav)) fail("corpus", "missing " + wav);
    }
  }
  return m;
}

CorpusManifest synth_corpus(const CorpusConfig& cfg) {
  if (cfg.count < 1) fail("corpus", "count must be >= 1");
  if (cfg.out_dir.empty()) fail("corpus", "missing output directory");
  fs::create_directories(cfg.out_dir);

  const ArrayGeometry array = default_array();
  const std::vector<SourceEntry> registry = scan_sources(cfg);

  CorpusManifest manifest;
  manifest.master_seed = cfg.master_seed;
  manifest.count = cfg.count;
  manifest.regime = cfg.regime;
  manifest.sample_rate = cfg.sample_rate;
  manifest.clip_seconds = cfg.clip_seconds;
  manifest.noise_floor_db = cfg.noise_floor_db;
  manifest.tail_factor = cfg.tail_factor;
  manifest.absorption_model = cfg.absorption_model;
  manifest.array = array;
  manifest.sources = registry;
  manifest.items.resize(cfg.count);

  SimOptions sim;
  sim.tail_factor = cfg.tail_factor;
  sim.absorption_model = cfg.absorption_model;

  const int workers = cfg.workers > 0 ? cfg.workers : default_workers();
  std::atomic<int> done{0};
  parallel_for(cfg.count, workers, [&](int i) {
    Rng rng = Rng::for_item(cfg.master_seed, static_cast<uint64_t>(i));

    SceneSample scene;
    SceneRecording rec;
    double snr_db = 0.0;
    SourceDraw sources;
    bool rendered = false;
    std::string last_error;
    // A pathological draw (e.g. unplaceable target) is resampled from the
    // same stream, so the retry path stays deterministic.
    for (int attempt = 0; attempt < 20 && !rendered; ++attempt) {
      try {
        scene = sample_scene(rng, cfg.tail_factor);
        snr_db = rng.uniform(cfg.regime.lo, cfg.regime.hi);
        sources = draw_sources(cfg, registry, rng);
        rec = render_scene(scene, array, sources.target, sources.interferer, snr_db,
                           cfg.noise_floor_db, rng, sim);
        rendered = true;
      } catch (const Error& e) {
        last_error = e.what();
      }
    }
    if (!rendered) fail("corpus", "item " + std::to_string(i) + ": " + last_error);

    const std::string dir_name = item_dir_name(i);
    const fs::path dir = fs::path(cfg.out_dir) / dir_name;
    fs::create_directories(dir);
    write_wav((dir / "mix.wav").string(), rec.mixture, cfg.sample_rate);
    write_wav((dir / "target_ref.wav").string(), rec.clean_reference, cfg.sample_rate);
    write_wav((dir / "interf.wav").string(), rec.interferer_scaled, cfg.sample_rate);

    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["index"] = i;
    j["master_seed"] = cfg.master_seed;
    j["sample_rate"] = cfg.sample_rate;
    j["clip_seconds"] = cfg.clip_seconds;
    j["room"] = {{"dims", scene.room.dimensions},
                 {"rt60", scene.room.rt60},
                 {"absorption", rec.metadata.absorption},
                 {"absorption_model", absorption_model_name(cfg.absorption_model)},
                 {"max_image_order", scene.room.max_image_order}};
    nlohmann::ordered_json array_json = geometry_to_json(array);
    array_json["center"] = scene.array_center;
    j["array"] = array_json;
    j["target"] = placement_to_json(scene.target);
    j["interferer"] = placement_to_json(scene.interferer);
    j["snr_db"] = snr_db;
    j["noise_floor_db"] = cfg.noise_floor_db;
    j["sources"] = {{"target", sources.target_desc}, {"interferer", sources.interferer_desc}};
    j["files"] = {{"mixture", "mix.wav"},
                  {"target_reference", "target_ref.wav"},
                  {"interference", "interf.wav"}};
    write_text((dir / "scene.json").string(), j.dump(2) + "\n");

    manifest.items[i] = {i, dir_name, dir_name + "/scene.json"};
    const int k = ++done;
    if (!cfg.quiet && (k % 25 == 0 || k == cfg.count))
      std::cerr << "synth: " << k << "/" << cfg.count << " scenes\n";
  });

  write_text(cfg.out_dir + "/manifest.json", manifest_to_json(manifest).dump(2) + "\n");
  return manifest;
}

SceneItem load_scene_item(const std::string& corpus_dir, const ManifestItem& item) {
  SceneItem s;
  s.index = item.index;
  s.scene = read_json(corpus_dir + "/" + item.scene_json);
  const std::string dir = corpus_dir + "/" + item.dir + "/";
  WavData mix = read_wav(dir + s.scene.at("files").at("mixture").get<std::string>());
  WavData ref = read_wav(dir + s.scene.at("files").at("target_reference").get<std::string>());
  s.mixture = std::move(mix.channels);
  s.target_reference = std::move(ref.channels.at(0));
  s.sample_rate = mix.sample_rate;
  s.array = geometry_from_json(s.scene.at("array"));
  s.oracle_direction = {rad(s.scene.at("target").at("azimuth_deg").get<double>()),
                        rad(s.scene.at("target").at("elevation_deg").get<double>())};
  s.snr_db = s.scene.at("snr_db").get<double>();
  return s;
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kMixture: return "mixture";
    case Method::kDasOracle: return "das_oracle";
    case Method::kMvdrOracle: return "mvdr_oracle";
    case Method::kDasEstimated: return "das_estimated";
    case Method::kIrm: return "irm";
    case Method::kIbm: return "ibm";
  }
  fail("corpus", "bad method enum");
}

Method method_by_name(const std::string& name) {
  for (Method m : {Method::kMixture, Method::kDasOracle, Method::kMvdrOracle,
                   Method::kDasEstimated, Method::kIrm, Method::kIbm})
    if (method_name(m) == name) return m;
  fail("corpus", "unknown method '" + name + "'");
}

Waveform estimate_for(Method method, const SceneItem& item, const BenchmarkOptions& opts) {
  StftConfig cfg;
  cfg.sample_rate = item.sample_rate;
  switch (method) {
    case Method::kMixture:
      return item.mixture.at(0);
    case Method::kDasOracle:
      return das(item.mixture, item.array, item.oracle_direction);
    case Method::kDasEstimated: {
      const GccFeatures feats = gcc_features(item.mixture, item.array);
      const DoaEstimate doa = doa_least_squares(estimate_tdoas(feats), item.array);
      const Direction dir = doa.degenerate ? Direction{0.0, 0.0} : doa.direction;
      return das(item.mixture, item.array, dir);
    }
    case Method::kMvdrOracle: {
      const ComplexSpectrogram spec = stft(item.mixture, cfg);
      const SpatialCovariance cov = estimate_covariance(spec, opts.loading);
      const SteeringVector steer = make_steering(item.array, item.oracle_direction, cfg);
      return mvdr(spec, steer, cov);
    }
    case Method::kIrm: {
      const ComplexSpectrogram mix0 = stft(item.mixture.at(0), cfg);
      const ComplexSpectrogram ref = stft(item.target_reference, cfg);
      return apply_mask(ideal_ratio_mask(ref, mix0, opts.irm_exponent), mix0);
    }
    case Method::kIbm: {
      const ComplexSpectrogram mix0 = stft(item.mixture.at(0), cfg);
      const ComplexSpectrogram ref = stft(item.target_reference, cfg);
      return apply_mask(ideal_binary_mask(ref, mix0, opts.ibm_threshold_db), mix0);
    }
  }
  fail("corpus", "bad method enum");
}

std::vector<BenchmarkResult> run_benchmark(const std::string& corpus_dir,
                                           const std::vector<Method>& methods,
                                           const BenchmarkOptions& opts) {
  const CorpusManifest manifest = read_manifest(corpus_dir);
  const int n = manifest.count;
  const int workers = opts.workers > 0 ? opts.workers : default_workers();

  const bool binned = manifest.regime.lo >= -1.0 && manifest.regime.hi <= 10.0;

  std::vector<BenchmarkResult> results(methods.size());
  for (size_t mi = 0; mi < methods.size(); ++mi) {
    results[mi].method = method_name(methods[mi]);
    results[mi].items.resize(n);
    results[mi].binned = binned;
    results[mi].config_echo = {{"master_seed", manifest.master_seed},
                               {"count", manifest.count},
                               {"regime", manifest.regime.name},
                               {"loading", opts.loading},
                               {"bss_filter_taps", opts.bss_filter_taps},
                               {"irm_exponent", opts.irm_exponent},
                               {"ibm_threshold_db", opts.ibm_threshold_db}};
  }

  if (!opts.estimates_dir.empty()) fs::create_directories(opts.estimates_dir);

  const auto t0 = std::chrono::steady_clock::now();
  std::atomic<int> done{0};
  parallel_for(n, workers, [&](int i) {
    SceneItem item;
    bool loaded = false;
    std::string load_error;
    try {
      item = load_scene_item(corpus_dir, manifest.items[i]);
      loaded = true;
    } catch (const std::exception& e) {
      load_error = e.what();
    }

    double mix_si_sdr = 0.0;
    if (loaded) mix_si_sdr = si_sdr(item.target_reference, item.mixture.at(0));

    for (size_t mi = 0; mi < methods.size(); ++mi) {
      ItemResult& out = results[mi].items[i];
      out.index = i;
      if (!loaded) {
        out.failed = true;
        out.error = load_error;
        continue;
      }
      try {
        const Waveform est = estimate_for(methods[mi], item, opts);
        MetricsReport r;
        r.si_sdr = si_sdr(item.target_reference, est);
        r.si_sdri = r.si_sdr - mix_si_sdr;
        const BssEval be = bss_eval_single(item.target_reference, est, opts.bss_filter_taps);
        r.sdr = be.sdr;
        r.sar = be.sar;
        r.stoi = stoi(item.target_reference, est, item.sample_rate);
        r.snr_db = item.snr_db;
        r.snr_bin = binned ? snr_bin_of(item.snr_db) : -1;
        out.metrics = r;
        if (!opts.estimates_dir.empty()) {
          const fs::path dir = fs::path(opts.estimates_dir) / item_dir_name(i);
          fs::create_directories(dir);
          write_wav((dir / ("est_" + results[mi].method + ".wav")).string(), est,
                    item.sample_rate);
        }
      } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
      }
    }
    const int k = ++done;
    if (!opts.quiet && (k % 25 == 0 || k == n))
      std::cerr << "benchmark: " << k << "/" << n << " items\n";
  });
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  for (auto& r : results) {
    std::vector<MetricsReport> ok;
    for (const auto& item : r.items)
      if (!item.failed) ok.push_back(item.metrics);
    r.summary = stratify(ok, binned);
    r.wall_seconds = wall;
  }
  return results;
}

namespace {

nlohmann::ordered_json stats_to_json(const MetricStats& s) {
  return {{"mean", s.mean}, {"std", s.stddev}};
}

nlohmann::ordered_json bin_to_json(const BinSummary& b) {
  nlohmann::ordered_json j;
  j["label"] = b.label;
  j["count"] = b.count;
  j["si_sdr"] = stats_to_json(b.si_sdr);
  j["si_sdri"] = stats_to_json(b.si_sdri);
  j["sdr"] = stats_to_json(b.sdr);
  j["sar"] = stats_to_json(b.sar);
  j["stoi"] = stats_to_json(b.stoi);
  return j;
}

}  // namespace

nlohmann::ordered_json result_to_json(const BenchmarkResult& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["method"] = r.method;
  j["config"] = r.config_echo;
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& it : r.items) {
    nlohmann::ordered_json e;
    e["index"] = it.index;
    e["failed"] = it.failed;
    if (it.failed) {
      e["error"] = it.error;
    } else {
      e["si_sdr"] = it.metrics.si_sdr;
      e["si_sdri"] = it.metrics.si_sdri;
      e["sdr"] = it.metrics.sdr;
      e["sar"] = it.metrics.sar;
      e["stoi"] = it.metrics.stoi;
      e["snr_db"] = it.metrics.snr_db;
      if (it.metrics.snr_bin >= 0)
        e["snr_bin"] = kSnrBinLabels[it.metrics.snr_bin];
      else
        e["snr_bin"] = nullptr;
    }
    items.push_back(e);
  }
  j["items"] = items;
  nlohmann::ordered_json summary;
  summary["overall"] = bin_to_json(r.summary.overall);
  nlohmann::ordered_json bins = nlohmann::ordered_json::array();
  for (const auto& b : r.summary.bins) bins.push_back(bin_to_json(b));
  summary["bins"] = bins;
  j["summary"] = summary;
  return j;
}

BenchmarkResult result_from_json(const nlohmann::json& j) {
  BenchmarkResult r;
  r.method = j.at("method").get<std::string>();
  r.config_echo = j.at("config");
  for (const auto& e : j.at("items")) {
    ItemResult it;
    it.index = e.at("index").get<int>();
    it.failed = e.at("failed").get<bool>();
    if (it.failed) {
      it.error = e.value("error", "");
    } else {
      it.metrics.si_sdr = e.at("si_sdr").get<double>();
      it.metrics.si_sdri = e.at("si_sdri").get<double>();
      it.metrics.sdr = e.at("sdr").get<double>();
      it.metrics.sar = e.at("sar").get<double>();
      it.metrics.stoi = e.at("stoi").get<double>();
      it.metrics.snr_db = e.at("snr_db").get<double>();
      it.metrics.snr_bin = -1;
      if (!e.at("snr_bin").is_null()) it.metrics.snr_bin = snr_bin_of(it.metrics.snr_db);
    }
    r.items.push_back(it);
  }
  // Summaries are recomputed from the rows, so regenerated reports are
  // bit-identical to the originals.
  std::vector<MetricsReport> ok;
  bool binned = true;
  for (const auto& it : r.items)
    if (!it.failed) {
      ok.push_back(it.metrics);
      binned = binned && it.metrics.snr_bin >= 0;
    }
  r.binned = binned && !ok.empty();
  r.summary = stratify(ok, r.binned);
  return r;
}

namespace {

int method_rank(const std::string& name) {
  const char* order[] = {"mixture",       "das_oracle", "mvdr_oracle",
                         "das_estimated", "irm",        "ibm"};
  for (int i = 0; i < 6; ++i)
    if (name == order[i]) return i;
  return 6;
}

}  // namespace

Report make_report(std::vector<BenchmarkResult> results) {
  if (results.empty()) fail("corpus", "no benchmark results");
  // Canonical row order makes the report a pure function of the result set,
  // so regenerating from stored rows is byte-identical.
  std::stable_sort(results.begin(), results.end(),
                   [](const BenchmarkResult& a, const BenchmarkResult& b) {
                     const int ra = method_rank(a.method), rb = method_rank(b.method);
                     return ra != rb ? ra < rb : a.method < b.method;
                   });
  std::string text;
  char line[256];
  std::snprintf(line, sizeof(line), "%-16s %8s %8s %8s %8s %8s %6s\n", "method", "SI-SDR",
                "SI-SDRi", "SDR", "SAR", "STOI", "N");
  text += line;
  text += std::string(66, '-') + "\n";
  for (const auto& r : results) {
    const BinSummary& o = r.summary.overall;
    std::snprintf(line, sizeof(line), "%-16s %8.2f %8.2f %8.2f %8.2f %8.3f %6d\n",
                  r.method.c_str(), o.si_sdr.mean, o.si_sdri.mean, o.sdr.mean, o.sar.mean,
                  o.stoi.mean, o.count);
    text += line;
  }

  for (const auto& r : results) {
    if (r.summary.bins.empty()) continue;
    text += "\nper-SNR bins: " + r.method + "\n";
    std::snprintf(line, sizeof(line), "%-10s %6s %8s %8s %8s\n", "bin", "N", "SI-SDR",
                  "SI-SDRi", "STOI");
    text += line;
    for (const auto& b : r.summary.bins) {
      std::snprintf(line, sizeof(line), "%-10s %6d %8.2f %8.2f %8.3f\n", b.label.c_str(),
                    b.count, b.si_sdr.mean, b.si_sdri.mean, b.stoi.mean);
      text += line;
    }
  }

  Report rep;
  rep.text = text;
  rep.json["schema_version"] = 1;
  nlohmann::ordered_json methods = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json m;
    m["method"] = r.method;
    m["overall"] = bin_to_json(r.summary.overall);
    nlohmann::ordered_json bins = nlohmann::ordered_json::array();
    for (const auto& b : r.summary.bins) bins.push_back(bin_to_json(b));
    m["bins"] = bins;
    int failures = 0;
    for (const auto& it : r.items) failures += it.failed ? 1 : 0;
    m["failed_items"] = failures;
    methods.push_back(m);
  }
  rep.json["methods"] = methods;
  return rep;
}

void write_benchmark_outputs(const std::string& out_dir,
                             const std::vector<BenchmarkResult>& results) {
  fs::create_directories(out_dir);
  for (const auto& r : results)
    write_text(out_dir + "/results_" + r.method + ".json", result_to_json(r).dump(2) + "\n");
  const Report rep = make_report(results);
  write_text(out_dir + "/report.json", rep.json.dump(2) + "\n");
  write_text(out_dir + "/report.txt", rep.text);
}

}  // namespace arraybench
