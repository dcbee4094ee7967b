// pipeline/recipe-config.h

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

#ifndef VQVC_PIPELINE_RECIPE_CONFIG_H_
#define VQVC_PIPELINE_RECIPE_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pipeline/synthetic-corpus.h"
#include "signal/stft.h"
#include "trainer/train-config.h"
#include "vqmodel/hierarchical-vqvae.h"

namespace vqvc {

enum class StageId { kPrepare = 0, kExtract, kStats, kTrain, kConvert, kEvaluate };
constexpr int kNumStages = 6;
extern const char *const kStageNames[kNumStages];

// Accepts a stage name or its 1-based number.
StageId ParseStage(const std::string &s);

struct StageRange {
  StageId start = StageId::kPrepare;
  StageId stop = StageId::kEvaluate;
};

// "a:b", "a:", ":b" or "a".
StageRange ParseStageRange(const std::string &s);

struct RecipeConfig {
  std::string config_path;  // file this was read from ("" if built in code)
  std::string corpus_dir = "corpus";
  std::string work_dir = "work";
  // When set, `prepare` generates the corpus if it has no manifest yet.
  bool synthetic = true;
  SyntheticCorpusOptions synth;
  // Empty means every speaker in the manifest.
  std::vector<std::string> speakers;

  int train_per_speaker = 15;
  int dev_per_speaker = 2;
  uint64_t split_seed = 0;
  // If all three are given they replace the computed split.
  std::vector<std::string> train_ids, dev_ids, eval_ids;

  FeatureOptions features;
  F0Options f0;
  int griffin_lim_iters = 60;

  ModelConfig model;  // n_speakers is filled from the speaker list
  TrainConfig train;

  std::string scorer;  // external MOS predictor, optional
  StageRange stages;

  // Relative paths are taken against the directory of the config file.
  std::string Resolve(const std::string &p) const;
  std::string CorpusDir() const { return Resolve(corpus_dir); }
  std::string WorkDir() const { return Resolve(work_dir); }
  void Check() const;
};

// Parses a TOML recipe.  Unknown tables or keys and badly typed values are
// ConfigErrors.
RecipeConfig ReadRecipeConfig(const std::string &path);
RecipeConfig ParseRecipeConfig(const std::string &text, const std::string &path);

// Commented template listing every key with its default.
std::string RecipeConfigTemplate();

}  // namespace vqvc

#endif  // VQVC_PIPELINE_RECIPE_CONFIG_H_
