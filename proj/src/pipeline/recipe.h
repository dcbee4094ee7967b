// pipeline/recipe.h

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

#ifndef VQVC_PIPELINE_RECIPE_H_
#define VQVC_PIPELINE_RECIPE_H_

#include <map>
#include <string>
#include <vector>

#include "evaluation/evaluate-conversion.h"
#include "pipeline/corpus.h"
#include "pipeline/recipe-config.h"
#include "trainer/batch.h"

namespace vqvc {

// A stage failed; what() names it.
class StageError : public Error {
 public:
  using Error::Error;
};

struct RunOptions {
  StageRange stages;
  bool force = false;
  int jobs = 1;
};

enum class StageOutcome { kRan, kSkipped };

struct RunSummary {
  std::vector<std::pair<StageId, StageOutcome>> stages;
};

// Runs the stages of `range` in order.  A stage is skipped when its stamp
// under work_dir/.stamps is newer than all of its inputs (the config file
// included) and all of its outputs exist, unless `force`.  Status lines go
// to standard output.
RunSummary RunRecipe(const RecipeConfig &cfg, const RunOptions &opts);

// Work directory layout.
struct WorkLayout {
  std::string root;
  explicit WorkLayout(std::string work_dir) : root(std::move(work_dir)) {}
  std::string Data(const std::string &f) const { return root + "/data/" + f; }
  std::string MelPath(const std::string &utt) const;
  std::string F0Path(const std::string &utt) const;
  std::string StatsPath() const { return root + "/stats/stats.json"; }
  std::string CheckpointDir() const { return root + "/checkpoints"; }
  std::string ModelPath() const { return root + "/checkpoints/model.crkp"; }
  std::string TrainLog() const { return root + "/reports/train_log.csv"; }
  std::string McdReportPath() const { return root + "/reports/mcd.csv"; }
  std::string UntrainedMcdReportPath() const { return root + "/reports/mcd_untrained.csv"; }
  std::string ConvertedBase(const std::string &src, const std::string &tgt,
                            const std::string &utt) const;
  std::string Stamp(StageId s) const;
};

// Speaker statistics keyed by speaker name, stored as JSON.
void WriteSpeakerStats(const std::map<std::string, SpeakerStats> &stats,
                       const std::vector<std::string> &speakers,
                       const std::string &path);
std::map<std::string, SpeakerStats> ReadSpeakerStats(const std::string &path);

// Prepared corpus view: manifest restricted to the configured speakers, and
// the split.
struct PreparedCorpus {
  CorpusManifest manifest;
  std::vector<std::string> speakers;
  SplitLists split;
  std::map<std::string, const UtteranceRecord *> by_id;
  void IndexIds();
  const UtteranceRecord &Get(const std::string &utt_id) const;
  int SpeakerIndex(const std::string &speaker) const;
};
PreparedCorpus LoadPrepared(const RecipeConfig &cfg);

struct EvalPairSpec {
  std::string source_utt, reference_utt;
  std::string source_spk, target_spk;
};

// Every eval utterance is converted to every other speaker that has an eval
// utterance of the same text; a missing reference is an error.
std::vector<EvalPairSpec> MakeEvalPairs(const PreparedCorpus &pc);

// Model-ready utterances (z-scored features and lcf0).
TrainUtterance LoadTrainUtterance(const WorkLayout &w, const PreparedCorpus &pc,
                                  const std::map<std::string, SpeakerStats> &stats,
                                  const std::string &utt_id);

UtteranceFeatures ExtractUtteranceFeatures(const Waveform &wav, const RecipeConfig &cfg);

// The stand-alone `convert` command: trained model and stats from the work
// directory, features from `wav_in`, Griffin-Lim output to `wav_out`.
void ConvertWaveFile(const RecipeConfig &cfg, const std::string &wav_in,
                     const std::string &source_spk, const std::string &target_spk,
                     const std::string &wav_out);

}  // namespace vqvc

#endif  // VQVC_PIPELINE_RECIPE_H_
