// pipeline/recipe.cc

// Copyright 2026  The vqvc Authors

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

#include "pipeline/recipe.h"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "base/file-util.h"
#include "base/parallel.h"
#include "signal/feature-io.h"
#include "signal/mel.h"
#include "signal/wave-io.h"
#include "trainer/trainer.h"

namespace vqvc {

namespace fs = std::filesystem;
using nlohmann::json;

std::string WorkLayout::MelPath(const std::string &utt) const {
  return root + "/features/" + utt + ".mel";
}
std::string WorkLayout::F0Path(const std::string &utt) const {
  return root + "/features/" + utt + ".f0";
}
std::string WorkLayout::ConvertedBase(const std::string &src, const std::string &tgt,
                                      const std::string &utt) const {
  return root + "/converted/" + src + "_to_" + tgt + "/" + utt;
}
std::string WorkLayout::Stamp(StageId s) const {
  return root + "/.stamps/" + kStageNames[int(s)];
}

namespace {

void WriteList(const std::string &path, const std::vector<std::string> &items) {
  AtomicWrite(path, [&](std::ostream &os) {
    for (const auto &i : items) os << i << "\n";
  });
}

std::vector<std::string> ReadList(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

std::vector<std::string> AllIds(const SplitLists &s) {
  std::vector<std::string> ids = s.train;
  ids.insert(ids.end(), s.dev.begin(), s.dev.end());
  ids.insert(ids.end(), s.eval.begin(), s.eval.end());
  return ids;
}

UtteranceFeatures ReadUtteranceFeatures(const WorkLayout &w, const std::string &utt) {
  UtteranceFeatures u;
  u.log_mel = ReadFeatures(w.MelPath(utt));
  u.f0 = FeaturesToF0(ReadFeatures(w.F0Path(utt)));
  if (u.f0.NumFrames() != u.log_mel.NumFrames())
    throw Error("features of " + utt + ": F0 and mel frame counts differ");
  return u;
}

struct Stage {
  StageId id;
  std::function<std::vector<std::string>()> inputs;
  std::function<std::vector<std::string>()> outputs;
  std::function<void()> run;
};

bool UpToDate(const Stage &st, const WorkLayout &w) {
  std::error_code ec;
  std::string stamp = w.Stamp(st.id);
  if (!fs::exists(stamp)) return false;
  auto stamp_time = fs::last_write_time(stamp, ec);
  if (ec) return false;
  try {
    for (const auto &o : st.outputs())
      if (!fs::exists(o)) return false;
    for (const auto &i : st.inputs()) {
      if (!fs::exists(i)) return false;
      if (fs::last_write_time(i) > stamp_time) return false;
    }
  } catch (const std::exception &) {
    return false;  // e.g. upstream lists not there yet
  }
  return true;
}

void TouchStamp(const WorkLayout &w, StageId id) {
  AtomicWrite(w.Stamp(id), [&](std::ostream &os) { os << kStageNames[int(id)] << "\n"; });
}

}  // namespace

void PreparedCorpus::IndexIds() {
  by_id.clear();
  for (const auto &u : manifest.utts) by_id[u.utt_id] = &u;
}

const UtteranceRecord &PreparedCorpus::Get(const std::string &utt_id) const {
  auto it = by_id.find(utt_id);
  if (it == by_id.end()) throw Error("utterance " + utt_id + " is not in the corpus");
  return *it->second;
}

int PreparedCorpus::SpeakerIndex(const std::string &speaker) const {
  for (size_t i = 0; i < speakers.size(); i++)
    if (speakers[i] == speaker) return static_cast<int>(i);
  throw Error("unknown speaker " + speaker);
}

void WriteSpeakerStats(const std::map<std::string, SpeakerStats> &stats,
                       const std::vector<std::string> &speakers,
                       const std::string &path) {
  json j = json::array();
  for (const auto &name : speakers) {
    const SpeakerStats &s = stats.at(name);
    j.push_back({{"speaker", name},
                 {"index", s.speaker_index},
                 {"lcf0_mean", s.lcf0_mean},
                 {"lcf0_std", s.lcf0_std},
                 {"feat_mean", s.feat_mean},
                 {"feat_std", s.feat_std}});
  }
  std::string text = j.dump(1) + "\n";
  AtomicWrite(path, [&](std::ostream &os) { os << text; });
}

std::map<std::string, SpeakerStats> ReadSpeakerStats(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  std::map<std::string, SpeakerStats> out;
  try {
    json j = json::parse(is);
    for (const auto &e : j) {
      SpeakerStats s;
      s.speaker_index = e.at("index");
      s.lcf0_mean = e.at("lcf0_mean");
      s.lcf0_std = e.at("lcf0_std");
      s.feat_mean = e.at("feat_mean").get<std::vector<double>>();
      s.feat_std = e.at("feat_std").get<std::vector<double>>();
      out[e.at("speaker").get<std::string>()] = s;
    }
  } catch (const json::exception &e) {
    throw Error(path + ": " + e.what());
  }
  return out;
}

PreparedCorpus LoadPrepared(const RecipeConfig &cfg) {
  WorkLayout w(cfg.WorkDir());
  PreparedCorpus pc;
  pc.manifest = ReadManifest(cfg.CorpusDir());
  pc.speakers = ReadList(w.Data("speakers.txt"));
  pc.split.train = ReadList(w.Data("train.list"));
  pc.split.dev = fs::exists(w.Data("dev.list")) ? ReadList(w.Data("dev.list"))
                                                : std::vector<std::string>{};
  pc.split.eval = ReadList(w.Data("eval.list"));
  pc.IndexIds();
  return pc;
}

std::vector<EvalPairSpec> MakeEvalPairs(const PreparedCorpus &pc) {
  // (speaker, text) -> eval utterance
  std::map<std::pair<std::string, std::string>, std::string> by_text;
  for (const auto &id : pc.split.eval) {
    const UtteranceRecord &u = pc.Get(id);
    by_text[{u.speaker, u.text_id}] = id;
  }
  std::vector<EvalPairSpec> pairs;
  for (const auto &id : pc.split.eval) {
    const UtteranceRecord &u = pc.Get(id);
    for (const auto &tgt : pc.speakers) {
      if (tgt == u.speaker) continue;
      auto it = by_text.find({tgt, u.text_id});
      if (it == by_text.end())
        throw Error(fmt::format("evaluation: no eval utterance of text {} for speaker {} "
                                "(needed as reference for {})",
                                u.text_id, tgt, id));
      pairs.push_back({id, it->second, u.speaker, tgt});
    }
  }
  return pairs;
}

UtteranceFeatures ExtractUtteranceFeatures(const Waveform &wav, const RecipeConfig &cfg) {
  if (wav.sample_rate_hz != cfg.features.sample_rate_hz)
    throw Error(fmt::format("sample rate {} Hz differs from the configured {} Hz "
                            "(resampling is not supported)",
                            wav.sample_rate_hz, cfg.features.sample_rate_hz));
  UtteranceFeatures u;
  u.log_mel = LogMelSpectrogram(wav, cfg.features);
  u.f0 = ExtractF0(wav, cfg.f0, cfg.features.stft);
  return u;
}

TrainUtterance LoadTrainUtterance(const WorkLayout &w, const PreparedCorpus &pc,
                                  const std::map<std::string, SpeakerStats> &stats,
                                  const std::string &utt_id) {
  const UtteranceRecord &rec = pc.Get(utt_id);
  const SpeakerStats &st = stats.at(rec.speaker);
  UtteranceFeatures f = ReadUtteranceFeatures(w, utt_id);
  TrainUtterance u;
  u.utt_id = utt_id;
  u.speaker = pc.SpeakerIndex(rec.speaker);
  u.feats = NormalizeFeatures(f.log_mel.data, st);
  ContinuousF0 c = ContinuousLogF0(f.f0, st);
  u.lcf0 = std::move(c.lcf0);
  u.uv = std::move(c.uv);
  return u;
}

namespace {

void RunPrepare(const RecipeConfig &cfg, const WorkLayout &w) {
  const std::string corpus = cfg.CorpusDir();
  if (!fs::exists(corpus + "/" + kManifestName)) {
    if (!cfg.synthetic)
      throw Error("no " + std::string(kManifestName) + " in " + corpus);
    spdlog::info("prepare: generating synthetic corpus in {}", corpus);
    GenerateSyntheticCorpus(corpus, cfg.synth);
  }
  CorpusManifest all = ReadManifest(corpus);
  std::vector<std::string> speakers = cfg.speakers.empty() ? all.Speakers() : cfg.speakers;
  std::set<std::string> known;
  for (const auto &s : all.Speakers()) known.insert(s);
  for (const auto &s : speakers)
    if (!known.count(s)) throw ConfigError("prepare: speaker " + s + " is not in the manifest");
  std::set<std::string> chosen(speakers.begin(), speakers.end());
  CorpusManifest m;
  for (const auto &u : all.utts)
    if (chosen.count(u.speaker)) m.utts.push_back(u);
  for (const auto &u : m.utts)
    if (!fs::exists(corpus + "/" + u.wav_path))
      throw Error("prepare: missing WAV " + corpus + "/" + u.wav_path);

  SplitLists split;
  if (!cfg.train_ids.empty()) {
    split = {cfg.train_ids, cfg.dev_ids, cfg.eval_ids};
    std::set<std::string> ids;
    for (const auto &u : m.utts) ids.insert(u.utt_id);
    for (const auto &id : AllIds(split))
      if (!ids.count(id)) throw ConfigError("prepare: split lists unknown utterance " + id);
  } else {
    split = SplitCorpus(m, cfg.train_per_speaker, cfg.dev_per_speaker, cfg.split_seed);
  }
  fs::create_directories(w.root + "/data");
  WriteList(w.Data("speakers.txt"), speakers);
  WriteList(w.Data("train.list"), split.train);
  WriteList(w.Data("dev.list"), split.dev);
  WriteList(w.Data("eval.list"), split.eval);
  spdlog::info("prepare: {} speakers, {} train / {} dev / {} eval utterances",
               speakers.size(), split.train.size(), split.dev.size(), split.eval.size());
}

void RunExtract(const RecipeConfig &cfg, const WorkLayout &w, int jobs) {
  PreparedCorpus pc = LoadPrepared(cfg);
  std::vector<std::string> ids = AllIds(pc.split);
  fs::create_directories(w.root + "/features");
  ParallelFor(static_cast<int>(ids.size()), jobs, [&](int i) {
    const UtteranceRecord &rec = pc.Get(ids[i]);
    Waveform wav = ReadWave(cfg.CorpusDir() + "/" + rec.wav_path);
    UtteranceFeatures f;
    try {
      f = ExtractUtteranceFeatures(wav, cfg);
    } catch (const Error &e) {
      throw Error(rec.wav_path + ": " + e.what());
    }
    WriteFeatures(f.log_mel, w.MelPath(ids[i]));
    WriteFeatures(F0ToFeatures(f.f0), w.F0Path(ids[i]));
  });
  spdlog::info("extract: {} utterances", ids.size());
}

void RunStats(const RecipeConfig &cfg, const WorkLayout &w) {
  PreparedCorpus pc = LoadPrepared(cfg);
  std::map<std::string, std::vector<UtteranceFeatures>> per_spk;
  for (const auto &id : pc.split.train)
    per_spk[pc.Get(id).speaker].push_back(ReadUtteranceFeatures(w, id));
  std::map<std::string, SpeakerStats> stats;
  for (size_t i = 0; i < pc.speakers.size(); i++) {
    const std::string &name = pc.speakers[i];
    if (per_spk[name].empty())
      throw Error("stats: speaker " + name + " has no training utterances");
    stats[name] = ComputeSpeakerStats(static_cast<int>(i), name, per_spk[name]);
  }
  fs::create_directories(w.root + "/stats");
  WriteSpeakerStats(stats, pc.speakers, w.StatsPath());
}

void RunTrain(const RecipeConfig &cfg, const WorkLayout &w) {
  PreparedCorpus pc = LoadPrepared(cfg);
  auto stats = ReadSpeakerStats(w.StatsPath());
  TrainCorpus corpus;
  corpus.n_speakers = static_cast<int>(pc.speakers.size());
  for (const auto &id : pc.split.train)
    corpus.train.push_back(LoadTrainUtterance(w, pc, stats, id));
  for (const auto &id : pc.split.dev)
    corpus.dev.push_back(LoadTrainUtterance(w, pc, stats, id));
  corpus.Index();
  ModelConfig mc = cfg.model;
  mc.n_speakers = corpus.n_speakers;
  HierarchicalVqvae model(mc);
  spdlog::info("train: variant {}, {} steps, {} generator parameters",
               VariantName(cfg.train.variant), cfg.train.steps,
               model.generator_params().NumParameters());
  fs::create_directories(w.root + "/reports");
  Trainer trainer(cfg.train, &model, &corpus);
  trainer.Run(w.CheckpointDir(), w.TrainLog());
}

void RunConvert(const RecipeConfig &cfg, const WorkLayout &w, int jobs) {
  PreparedCorpus pc = LoadPrepared(cfg);
  auto stats = ReadSpeakerStats(w.StatsPath());
  auto model = LoadTrainedModel(w.ModelPath());
  std::vector<EvalPairSpec> pairs = MakeEvalPairs(pc);
  GriffinLimOptions gl;
  gl.n_iters = cfg.griffin_lim_iters;
  ParallelFor(static_cast<int>(pairs.size()), jobs, [&](int i) {
    const EvalPairSpec &p = pairs[i];
    UtteranceFeatures src = ReadUtteranceFeatures(w, p.source_utt);
    ConversionResult r =
        ConvertUtterance(*model, src, stats.at(p.source_spk), stats.at(p.target_spk));
    std::string base = w.ConvertedBase(p.source_spk, p.target_spk, p.source_utt);
    fs::create_directories(fs::path(base).parent_path());
    WriteFeatures(r.converted, base + ".mel");
    WriteWave(SynthesizeFromLogMel(r.converted, cfg.features, gl), base + ".wav");
  });
  spdlog::info("convert: {} conversions", pairs.size());
}

void RunEvaluate(const RecipeConfig &cfg, const WorkLayout &w, int jobs) {
  PreparedCorpus pc = LoadPrepared(cfg);
  auto stats = ReadSpeakerStats(w.StatsPath());
  std::vector<EvalPairSpec> specs = MakeEvalPairs(pc);
  std::vector<ConversionPair> pairs;
  std::vector<std::string> wavs;
  for (const auto &s : specs) {
    ConversionPair p;
    p.source_spk = s.source_spk;
    p.target_spk = s.target_spk;
    p.utt_id = s.source_utt;
    p.source = ReadUtteranceFeatures(w, s.source_utt);
    p.source_stats = &stats.at(s.source_spk);
    p.target_stats = &stats.at(s.target_spk);
    p.reference_log_mel = ReadFeatures(w.MelPath(s.reference_utt));
    pairs.push_back(std::move(p));
    wavs.push_back(w.ConvertedBase(s.source_spk, s.target_spk, s.source_utt) + ".wav");
  }
  // Trained model: the converted features written by the convert stage.
  Converter from_disk = [&](const ConversionPair &p) {
    return ReadFeatures(w.ConvertedBase(p.source_spk, p.target_spk, p.utt_id) + ".mel");
  };
  McdReport report = EvaluateConversion(pairs, from_disk, jobs);
  AttachScores(&report, ExternalScorer(cfg.scorer), wavs);
  fs::create_directories(w.root + "/reports");
  WriteMcdReport(report, w.McdReportPath());

  // Reference point: the same pairs through an untrained model.
  auto trained = LoadModel(w.ModelPath());
  HierarchicalVqvae untrained(trained->config());
  McdReport base = EvaluateConversion(pairs, ModelConverter(untrained), jobs);
  WriteMcdReport(base, w.UntrainedMcdReportPath());
  fmt::print("evaluate: corpus mean MCD {:.4f} dB over {} pairs (untrained model {:.4f} dB)\n",
             report.corpus_mean, report.rows.size(), base.corpus_mean);
}

}  // namespace

RunSummary RunRecipe(const RecipeConfig &cfg, const RunOptions &opts) {
  cfg.Check();
  WorkLayout w(cfg.WorkDir());
  fs::create_directories(w.root + "/.stamps");
  std::string config_file = cfg.config_path;
  auto with_config = [&](std::vector<std::string> v) {
    if (!config_file.empty()) v.push_back(config_file);
    return v;
  };
  auto feature_files = [&](const std::vector<std::string> &ids) {
    std::vector<std::string> f;
    for (const auto &id : ids) {
      f.push_back(w.MelPath(id));
      f.push_back(w.F0Path(id));
    }
    return f;
  };
  auto lists = [&]() {
    return std::vector<std::string>{w.Data("speakers.txt"), w.Data("train.list"),
                                    w.Data("dev.list"), w.Data("eval.list")};
  };
  auto converted = [&](const char *ext) {
    std::vector<std::string> f;
    for (const auto &p : MakeEvalPairs(LoadPrepared(cfg)))
      f.push_back(w.ConvertedBase(p.source_spk, p.target_spk, p.source_utt) + ext);
    return f;
  };
  auto concat = [](std::vector<std::string> a, const std::vector<std::string> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const std::string model_json = ModelConfigPath(w.ModelPath());

  std::vector<Stage> stages = {
      {StageId::kPrepare,
       [&] { return with_config({cfg.CorpusDir() + "/" + kManifestName}); }, lists,
       [&] { RunPrepare(cfg, w); }},
      {StageId::kExtract, [&] { return with_config(lists()); },
       [&] { return feature_files(AllIds(LoadPrepared(cfg).split)); },
       [&] { RunExtract(cfg, w, opts.jobs); }},
      {StageId::kStats,
       [&] { return with_config(concat(lists(), feature_files(LoadPrepared(cfg).split.train))); },
       [&] { return std::vector<std::string>{w.StatsPath()}; }, [&] { RunStats(cfg, w); }},
      {StageId::kTrain,
       [&] {
         PreparedCorpus pc = LoadPrepared(cfg);
         return with_config(concat({w.StatsPath()},
                                   feature_files(concat(pc.split.train, pc.split.dev))));
       },
       [&] { return std::vector<std::string>{w.ModelPath(), model_json, w.TrainLog()}; },
       [&] { RunTrain(cfg, w); }},
      {StageId::kConvert,
       [&] {
         return with_config(concat({w.ModelPath(), model_json, w.StatsPath()},
                                   feature_files(LoadPrepared(cfg).split.eval)));
       },
       [&] { return concat(converted(".mel"), converted(".wav")); },
       [&] { RunConvert(cfg, w, opts.jobs); }},
      {StageId::kEvaluate,
       [&] {
         return with_config(concat(concat({w.ModelPath(), w.StatsPath()}, converted(".mel")),
                                   feature_files(LoadPrepared(cfg).split.eval)));
       },
       [&] {
         return std::vector<std::string>{w.McdReportPath(), w.UntrainedMcdReportPath()};
       },
       [&] { RunEvaluate(cfg, w, opts.jobs); }},
  };

  RunSummary summary;
  for (int i = int(opts.stages.start); i <= int(opts.stages.stop); i++) {
    const Stage &st = stages[i];
    const char *name = kStageNames[i];
    if (!opts.force && UpToDate(st, w)) {
      fmt::print("stage {}: skipped (up to date)\n", name);
      std::fflush(stdout);
      summary.stages.push_back({st.id, StageOutcome::kSkipped});
      continue;
    }
    fmt::print("stage {}: running\n", name);
    std::fflush(stdout);
    auto t0 = std::chrono::steady_clock::now();
    try {
      std::error_code ec;
      fs::remove(w.Stamp(st.id), ec);
      st.run();
    } catch (const ConfigError &) {
      throw;
    } catch (const std::exception &e) {
      throw StageError(fmt::format("stage {} failed: {}", name, e.what()));
    }
    TouchStamp(w, st.id);
    double sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fmt::print("stage {}: done ({:.1f} s)\n", name, sec);
    std::fflush(stdout);
    summary.stages.push_back({st.id, StageOutcome::kRan});
  }
  return summary;
}

void ConvertWaveFile(const RecipeConfig &cfg, const std::string &wav_in,
                     const std::string &source_spk, const std::string &target_spk,
                     const std::string &wav_out) {
  WorkLayout w(cfg.WorkDir());
  auto stats = ReadSpeakerStats(w.StatsPath());
  auto src = stats.find(source_spk), tgt = stats.find(target_spk);
  if (src == stats.end()) throw Error("convert: unknown source speaker " + source_spk);
  if (tgt == stats.end()) throw Error("convert: unknown target speaker " + target_spk);
  auto model = LoadTrainedModel(w.ModelPath());
  UtteranceFeatures f = ExtractUtteranceFeatures(ReadWave(wav_in), cfg);
  ConversionResult r = ConvertUtterance(*model, f, src->second, tgt->second);
  GriffinLimOptions gl;
  gl.n_iters = cfg.griffin_lim_iters;
  WriteWave(SynthesizeFromLogMel(r.converted, cfg.features, gl), wav_out);
}

}  // namespace vqvc
