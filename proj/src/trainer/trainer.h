// trainer/trainer.h

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

#ifndef VQVC_TRAINER_TRAINER_H_
#define VQVC_TRAINER_TRAINER_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "autograd/adam.h"
#include "losses/adversarial-losses.h"
#include "losses/vq-losses.h"
#include "trainer/batch.h"
#include "trainer/train-config.h"

namespace vqvc {

// Everything one step draws at random, fixed before any network runs.
struct StepInputs {
  Batch batch;
  // Random other speaker per item (cycle target, converted-GAN condition).
  std::vector<int> targets;
  // Real examples for the discriminator, GAN variants only.
  Batch real;
};

struct GeneratorPass {
  ag::Value total;
  LossReport report;  // every name present, total included
  HierarchicalOutput out;
  ag::Value fake;                  // undefined unless GAN
  std::vector<int> fake_speakers;  // conditioning speaker of each fake item
};

struct DevResult {
  double reconstruction = 0.0;
  double objective = 0.0;  // reconstruction + codebook + beta * commitment
};

struct TrainResult {
  std::string checkpoint_path;
  std::string log_path;
  std::vector<std::pair<int64_t, DevResult>> dev_history;
  // Per stack, per code: how often it was selected over the whole run.
  std::array<std::vector<int64_t>, kNumStacks> code_usage;
  LossReport last_report;
};

class Trainer {
 public:
  // The trainer does not own the model or corpus.
  Trainer(const TrainConfig &cfg, HierarchicalVqvae *model,
          const TrainCorpus *corpus);

  const TrainConfig &config() const { return cfg_; }
  StepInputs SampleStep(int64_t step) const;

  // The variant objective for the generator side, recorded on the active
  // tape (if any).
  GeneratorPass GeneratorObjective(const StepInputs &in) const;
  // Discriminator objective on detached fakes; fills adv_d and ac_real.
  ag::Value DiscriminatorObjective(const StepInputs &in, const GeneratorPass &g,
                                   LossReport *report) const;

  // One generator update and, for GAN variants, one discriminator update.
  LossReport TrainStep(int64_t step);
  // The two halves of TrainStep.  GeneratorStep touches only the generator
  // optimizer; DiscriminatorStep only the discriminator one and adds its
  // terms to g->report.
  GeneratorPass GeneratorStep(const StepInputs &in, int64_t step);
  void DiscriminatorStep(const StepInputs &in, GeneratorPass *g, int64_t step);

  // Whole-utterance objective over `utts`, no tape, parameters untouched.
  DevResult Evaluate(const std::vector<TrainUtterance> &utts) const;

  // Runs cfg.steps steps from the current step count.  Writes the CSV log,
  // a checkpoint every checkpoint_every steps and `checkpoint_dir/model.crkp`
  // at the end.
  TrainResult Run(const std::string &checkpoint_dir, const std::string &log_path);

  int64_t steps_done() const { return steps_done_; }
  const std::array<std::vector<int64_t>, kNumStacks> &code_usage() const {
    return code_usage_;
  }
  void SaveCheckpoint(const std::string &path) const;

 private:
  TrainConfig cfg_;
  LossConfig loss_;
  HierarchicalVqvae *model_;
  const TrainCorpus *corpus_;
  ag::Adam gen_opt_, disc_opt_;
  int64_t steps_done_ = 0;
  std::array<std::vector<int64_t>, kNumStacks> code_usage_;
};

// total recomputed from the reported parts with the configured weights.
double WeightedTotal(const LossReport &r, const LossConfig &loss, Variant v);

}  // namespace vqvc

#endif  // VQVC_TRAINER_TRAINER_H_
