// tools/arraybench_main.cc

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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arraybench/beamform.h"
#include "arraybench/corpus.h"
#include "arraybench/mask.h"
#include "arraybench/metrics.h"
#include "arraybench/room_sim.h"
#include "arraybench/spatial.h"
#include "arraybench/stft.h"
#include "arraybench/tensor_io.h"
#include "arraybench/wav_io.h"

namespace fs = std::filesystem;
using namespace arraybench;

namespace {

// --config FILE provides defaults for flags the user did not pass.
void apply_config_defaults(CLI::App* sub, const std::string& config_path) {
  if (config_path.empty()) return;
  std::ifstream f(config_path);
  if (!f) throw Error("config: cannot open " + config_path);
  nlohmann::json j;
  f >> j;
  for (auto it = j.begin(); it != j.end(); ++it) {
    CLI::Option* opt = sub->get_option_no_throw("--" + it.key());
    if (opt == nullptr || opt->count() > 0) continue;
    std::stringstream ss;
    if (it.value().is_string())
      ss << it.value().get<std::string>();
    else
      ss << it.value();
    opt->add_result(ss.str());
    opt->run_callback();
  }
}

std::vector<Method> parse_methods(const std::string& csv) {
  std::vector<Method> methods;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) methods.push_back(method_by_name(tok));
  if (methods.empty()) throw Error("corpus: no methods requested");
  return methods;
}

double deg(double radians) { return radians * 180.0 / kPi; }

int cmd_synth(const CorpusConfig& cfg) {
  const auto manifest = synth_corpus(cfg);
  std::cout << "wrote " << manifest.count << " scenes to " << cfg.out_dir << "\n";
  return 0;
}

int cmd_rir(uint64_t seed, double rt60_override, int order_override,
            const std::string& model, const std::string& out) {
  Rng rng(seed);
  SceneSample scene = sample_scene(rng);
  if (rt60_override > 0.0) {
    scene.room.rt60 = rt60_override;
    scene.room.max_image_order = image_order_for(scene.room, 1.5 * rt60_override);
  }
  if (order_override >= 0) scene.room.max_image_order = order_override;
  SimOptions opts;
  opts.absorption_model =
      model == "eyring" ? AbsorptionModel::kEyring : AbsorptionModel::kSabine;

  const ArrayGeometry g = default_array();
  const Rir rir = simulate_rir(scene.room, scene.target, g, scene.array_center, opts);

  std::cout << "room " << scene.room.dimensions[0] << " x " << scene.room.dimensions[1]
            << " x " << scene.room.dimensions[2] << " m, rt60 " << scene.room.rt60
            << " s, image order " << scene.room.max_image_order << "\n";
  std::cout << "target at " << scene.target.distance << " m, azimuth "
            << deg(scene.target.direction_from_array.azimuth) << " deg\n";
  for (int m = 0; m < g.num_mics(); ++m) {
    std::cout << "mic " << m << ": direct predicted " << rir.direct_path_sample[m]
              << " samples, detected " << direct_path_arrival(rir.taps[m]);
    if (scene.room.max_image_order > 0)
      std::cout << ", schroeder T60 " << estimate_rt60_schroeder(rir.taps[m], 16000.0) << " s";
    std::cout << "\n";
  }
  if (!out.empty()) {
    write_wav(out, rir.taps, 16000.0);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_spatial(const std::string& scene_dir, int bins, bool frame_averaged,
                const std::string& dump, const std::string& dump_spec) {
  WavData mix = read_wav(scene_dir + "/mix.wav");
  std::ifstream f(scene_dir + "/scene.json");
  if (!f) throw Error("corpus: cannot open scene.json in " + scene_dir);
  nlohmann::json scene;
  f >> scene;
  const ArrayGeometry g = geometry_from_json(scene.at("array"));

  const GccFeatures feats = gcc_features(
      mix.channels, g, bins, frame_averaged ? GccMode::kFrameAveraged : GccMode::kWholeClip);
  const TdoaSet tdoas = estimate_tdoas(feats);
  const DoaEstimate doa = doa_least_squares(tdoas, g);

  for (size_t p = 0; p < feats.pairs.size(); ++p)
    std::cout << "pair (" << feats.pairs[p].first << "," << feats.pairs[p].second
              << "): tdoa " << tdoas.delays[p] << " samples, confidence "
              << tdoas.confidence[p] << "\n";
  if (doa.degenerate) {
    std::cout << "doa: degenerate (zero delay vector)\n";
  } else {
    std::cout << "doa: azimuth " << deg(doa.direction.azimuth) << " deg, elevation "
              << deg(doa.direction.elevation) << " deg, residual " << doa.residual
              << " samples\n";
    std::cout << "oracle: azimuth " << scene.at("target").at("azimuth_deg").get<double>()
              << " deg, elevation " << scene.at("target").at("elevation_deg").get<double>()
              << " deg\n";
  }
  if (!dump_spec.empty()) {
    StftConfig cfg;
    cfg.sample_rate = mix.sample_rate;
    dump_spectrogram(dump_spec, stft(mix.channels, cfg));
    std::cout << "wrote " << dump_spec << "\n";
  }
  if (!dump.empty()) {
    nlohmann::ordered_json j;
    j["pairs"] = feats.pairs;
    std::vector<double> lags(feats.bins);
    for (int k = 0; k < feats.bins; ++k) lags[k] = feats.lag_of_bin(k);
    j["lags"] = lags;
    j["values"] = feats.values;
    std::ofstream out(dump);
    out << j.dump(2) << "\n";
    std::cout << "wrote " << dump << "\n";
  }
  return 0;
}

int cmd_beamform(const std::string& corpus_dir, const std::string& method,
                 const std::string& steer, const std::string& cov_source, double loading,
                 const std::string& out_dir, int workers) {
  const CorpusManifest manifest = read_manifest(corpus_dir);
  fs::create_directories(out_dir);
  BenchmarkOptions opts;
  opts.loading = loading;
  opts.workers = workers;

  const bool use_mvdr = method == "mvdr";
  if (!use_mvdr && method != "das") throw Error("corpus: method must be das or mvdr");
  const bool oracle_steer = steer == "oracle";
  if (!oracle_steer && steer != "estimated")
    throw Error("corpus: steer must be oracle or estimated");
  const bool oracle_cov = cov_source == "oracle";
  if (!oracle_cov && cov_source != "mixture")
    throw Error("corpus: cov must be mixture or oracle");

  std::vector<MetricsReport> reports(manifest.count);
  std::vector<char> failed(manifest.count, 0);
  parallel_for(manifest.count, opts.workers > 0 ? opts.workers : default_workers(), [&](int i) {
    try {
      const SceneItem item = load_scene_item(corpus_dir, manifest.items[i]);
      Direction dir = item.oracle_direction;
      if (!oracle_steer) {
        const DoaEstimate doa =
            doa_least_squares(estimate_tdoas(gcc_features(item.mixture, item.array)), item.array);
        if (!doa.degenerate) dir = doa.direction;
      }
      Waveform est;
      StftConfig cfg;
      cfg.sample_rate = item.sample_rate;
      if (use_mvdr) {
        const ComplexSpectrogram spec = stft(item.mixture, cfg);
        ComplexSpectrogram cov_spec = spec;
        if (oracle_cov) {
          WavData interf = read_wav(corpus_dir + "/" + manifest.items[i].dir + "/" +
                                    item.scene.at("files").at("interference").get<std::string>());
          cov_spec = stft(interf.channels, cfg);
        }
        est = mvdr(spec, make_steering(item.array, dir, cfg), estimate_covariance(cov_spec, loading));
      } else {
        est = das(item.mixture, item.array, dir);
      }
      const fs::path dir_out = fs::path(out_dir) / manifest.items[i].dir;
      fs::create_directories(dir_out);
      write_wav((dir_out / "est.wav").string(), est, item.sample_rate);

      MetricsReport r;
      r.si_sdr = si_sdr(item.target_reference, est);
      r.si_sdri = r.si_sdr - si_sdr(item.target_reference, item.mixture.at(0));
      const BssEval be = bss_eval_single(item.target_reference, est);
      r.sdr = be.sdr;
      r.sar = be.sar;
      r.stoi = stoi(item.target_reference, est, item.sample_rate);
      r.snr_db = item.snr_db;
      reports[i] = r;
    } catch (const std::exception& e) {
      failed[i] = 1;
      warn("item " + std::to_string(i) + " failed: " + e.what());
    }
  });

  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["method"] = method + "(" + steer + (use_mvdr ? ",cov=" + cov_source : "") + ")";
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  double mean = 0.0;
  int ok = 0;
  for (int i = 0; i < manifest.count; ++i) {
    nlohmann::ordered_json e;
    e["index"] = i;
    e["failed"] = static_cast<bool>(failed[i]);
    if (!failed[i]) {
      e["si_sdr"] = reports[i].si_sdr;
      e["si_sdri"] = reports[i].si_sdri;
      e["sdr"] = reports[i].sdr;
      e["sar"] = reports[i].sar;
      e["stoi"] = reports[i].stoi;
      e["snr_db"] = reports[i].snr_db;
      mean += reports[i].si_sdri;
      ++ok;
    }
    items.push_back(e);
  }
  j["items"] = items;
  std::ofstream out(out_dir + "/metrics.json");
  out << j.dump(2) << "\n";
  if (ok > 0)
    std::cout << "mean SI-SDRi " << mean / ok << " dB over " << ok << " items\n";
  return ok == manifest.count ? 0 : 1;
}

int cmd_extract(const std::string& corpus_dir, const std::string& mask_kind, int exponent,
                double threshold_db, const std::string& out_dir, int workers,
                const std::string& mask_dump) {
  const CorpusManifest manifest = read_manifest(corpus_dir);
  fs::create_directories(out_dir);
  std::vector<double> si_sdri(manifest.count, 0.0);
  std::vector<char> failed(manifest.count, 0);
  parallel_for(manifest.count, workers > 0 ? workers : default_workers(), [&](int i) {
    try {
      const SceneItem item = load_scene_item(corpus_dir, manifest.items[i]);
      StftConfig cfg;
      cfg.sample_rate = item.sample_rate;
      const ComplexSpectrogram mix0 = stft(item.mixture.at(0), cfg);
      const ComplexSpectrogram ref = stft(item.target_reference, cfg);
      const MagnitudeMask m = mask_kind == "irm"
                                  ? ideal_ratio_mask(ref, mix0, exponent)
                                  : ideal_binary_mask(ref, mix0, threshold_db);
      const Waveform est = apply_mask(m, mix0);
      const fs::path dir_out = fs::path(out_dir) / manifest.items[i].dir;
      fs::create_directories(dir_out);
      write_wav((dir_out / "est.wav").string(), est, item.sample_rate);
      if (!mask_dump.empty() && i == 0)
        write_tensor(mask_dump,
                     {static_cast<uint32_t>(m.num_bins), static_cast<uint32_t>(m.num_frames)},
                     m.values);
      si_sdri[i] = si_sdr(item.target_reference, est) -
                   si_sdr(item.target_reference, item.mixture.at(0));
    } catch (const std::exception& e) {
      failed[i] = 1;
      warn("item " + std::to_string(i) + " failed: " + e.what());
    }
  });
  double mean = 0.0;
  int ok = 0;
  for (int i = 0; i < manifest.count; ++i)
    if (!failed[i]) {
      mean += si_sdri[i];
      ++ok;
    }
  if (ok > 0)
    std::cout << "mean SI-SDRi " << mean / ok << " dB over " << ok << " items\n";
  return ok == manifest.count ? 0 : 1;
}

int cmd_eval(const std::string& corpus_dir, const std::string& methods_csv,
             const std::string& out_dir, double loading, int workers,
             const std::string& estimates_dir) {
  BenchmarkOptions opts;
  opts.loading = loading;
  opts.workers = workers;
  opts.estimates_dir = estimates_dir;
  const auto results = run_benchmark(corpus_dir, parse_methods(methods_csv), opts);
  write_benchmark_outputs(out_dir, results);
  std::cout << make_report(results).text;
  std::cerr << "benchmark wall time: " << results.front().wall_seconds << " s\n";
  int failures = 0;
  for (const auto& r : results)
    for (const auto& it : r.items) failures += it.failed ? 1 : 0;
  return failures == 0 ? 0 : 1;
}

int cmd_report(const std::string& results_dir, const std::string& out_dir) {
  std::vector<std::string> paths;
  for (const auto& e : fs::directory_iterator(results_dir)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("results_", 0) == 0 && e.path().extension() == ".json")
      paths.push_back(e.path().string());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw Error("corpus: no results_*.json in " + results_dir);
  std::vector<BenchmarkResult> results;
  for (const auto& p : paths) {
    std::ifstream f(p);
    nlohmann::json j;
    f >> j;
    results.push_back(result_from_json(j));
  }
  const Report rep = make_report(results);
  std::cout << rep.text;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream jf(out_dir + "/report.json");
    jf << rep.json.dump(2) << "\n";
    std::ofstream tf(out_dir + "/report.txt");
    tf << rep.text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compact-array speech scene workbench"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "synthesize a scene corpus");
  CorpusConfig cfg;
  std::string regime = "hard";
  std::string absorption = "sabine";
  std::string config_path;
  synth->add_option("--n", cfg.count, "number of scenes")->required();
  synth->add_option("--out", cfg.out_dir, "output directory")->required();
  synth->add_option("--regime", regime, "SNR regime: base|cl1|hard");
  synth->add_option("--seed", cfg.master_seed, "master seed");
  synth->add_option("--sources", cfg.source_dir, "directory of mono source WAVs");
  synth->add_option("--workers", cfg.workers, "worker threads (0 = auto)");
  synth->add_option("--noise-floor-db", cfg.noise_floor_db, "sensor noise level");
  synth->add_option("--tail-factor", cfg.tail_factor, "RIR tail length / rt60");
  synth->add_option("--absorption-model", absorption, "sabine|eyring");
  synth->add_option("--config", config_path, "JSON file with flag defaults");

  // rir
  auto* rir = app.add_subcommand("rir", "single-scene RIR debug");
  uint64_t rir_seed = 0;
  double rir_rt60 = -1.0;
  int rir_order = -1;
  std::string rir_model = "sabine", rir_out;
  rir->add_option("--seed", rir_seed, "scene seed");
  rir->add_option("--rt60", rir_rt60, "override rt60 seconds");
  rir->add_option("--order", rir_order, "override image order (0 = anechoic)");
  rir->add_option("--absorption-model", rir_model, "sabine|eyring");
  rir->add_option("--out", rir_out, "write multichannel RIR wav");

  // spatial
  auto* spatial = app.add_subcommand("spatial", "TDOA/DOA from a scene directory");
  std::string spatial_scene, spatial_dump, spatial_dump_spec;
  int spatial_bins = 64;
  bool spatial_frames = false;
  spatial->add_option("--scene", spatial_scene, "scene directory")->required();
  spatial->add_option("--bins", spatial_bins, "delay bins (e.g. 16 or 64)");
  spatial->add_flag("--frame-averaged", spatial_frames, "average whitened cross-spectra per frame");
  spatial->add_option("--dump", spatial_dump, "write features JSON");
  spatial->add_option("--dump-spectrogram", spatial_dump_spec, "write the mixture STFT tensor");

  // beamform
  auto* beam = app.add_subcommand("beamform", "run a beamformer over a corpus");
  std::string beam_corpus, beam_method = "das", beam_steer = "oracle", beam_cov = "mixture",
              beam_out = "beamform_out";
  double beam_loading = 1e-3;
  int beam_workers = 0;
  beam->add_option("--corpus", beam_corpus, "corpus directory")->required();
  beam->add_option("--method", beam_method, "das|mvdr");
  beam->add_option("--steer", beam_steer, "oracle|estimated");
  beam->add_option("--cov", beam_cov, "mixture|oracle (diagnostic)");
  beam->add_option("--loading", beam_loading, "diagonal loading factor");
  beam->add_option("--out", beam_out, "output directory");
  beam->add_option("--workers", beam_workers, "worker threads (0 = auto)");

  // extract
  auto* extract = app.add_subcommand("extract", "oracle mask extraction over a corpus");
  std::string ext_corpus, ext_mask = "irm", ext_out = "extract_out", ext_dump;
  int ext_exponent = 1, ext_workers = 0;
  double ext_threshold = 0.0;
  extract->add_option("--corpus", ext_corpus, "corpus directory")->required();
  extract->add_option("--mask", ext_mask, "irm|ibm");
  extract->add_option("--exponent", ext_exponent, "IRM exponent (1 or 2)");
  extract->add_option("--threshold-db", ext_threshold, "IBM threshold");
  extract->add_option("--out", ext_out, "output directory");
  extract->add_option("--workers", ext_workers, "worker threads (0 = auto)");
  extract->add_option("--dump-mask", ext_dump, "write first item's mask tensor");

  // eval
  auto* eval = app.add_subcommand("eval", "benchmark methods over a corpus");
  std::string eval_corpus, eval_methods = "mixture,das_oracle,mvdr_oracle,irm",
              eval_out = "eval_out", eval_estimates, eval_config;
  double eval_loading = 1e-3;
  int eval_workers = 0;
  eval->add_option("--corpus", eval_corpus, "corpus directory")->required();
  eval->add_option("--methods", eval_methods,
                   "comma list: mixture,das_oracle,mvdr_oracle,das_estimated,irm,ibm");
  eval->add_option("--out", eval_out, "report output directory");
  eval->add_option("--loading", eval_loading, "MVDR diagonal loading");
  eval->add_option("--workers", eval_workers, "worker threads (0 = auto)");
  eval->add_option("--estimates", eval_estimates, "also write per-item est wavs here");
  eval->add_option("--config", eval_config, "JSON file with flag defaults");

  // report
  auto* report = app.add_subcommand("report", "regenerate tables from stored results");
  std::string rep_results, rep_out;
  report->add_option("--results", rep_results, "directory with results_*.json")->required();
  report->add_option("--out", rep_out, "write report.json/report.txt here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      apply_config_defaults(synth, config_path);
      cfg.regime = regime_by_name(regime);
      cfg.absorption_model = absorption == "eyring" ? AbsorptionModel::kEyring
                                                    : AbsorptionModel::kSabine;
      return cmd_synth(cfg);
    }
    if (rir->parsed()) return cmd_rir(rir_seed, rir_rt60, rir_order, rir_model, rir_out);
    if (spatial->parsed())
      return cmd_spatial(spatial_scene, spatial_bins, spatial_frames, spatial_dump,
                         spatial_dump_spec);
    if (beam->parsed())
      return cmd_beamform(beam_corpus, beam_method, beam_steer, beam_cov, beam_loading,
                          beam_out, beam_workers);
    if (extract->parsed())
      return cmd_extract(ext_corpus, ext_mask, ext_exponent, ext_threshold, ext_out,
                         ext_workers, ext_dump);
    if (eval->parsed()) {
      apply_config_defaults(eval, eval_config);
      return cmd_eval(eval_corpus, eval_methods, eval_out, eval_loading, eval_workers,
                      eval_estimates);
    }
    if (report->parsed()) return cmd_report(rep_results, rep_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
