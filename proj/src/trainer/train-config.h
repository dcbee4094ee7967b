// trainer/train-config.h

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

#ifndef VQVC_TRAINER_TRAIN_CONFIG_H_
#define VQVC_TRAINER_TRAIN_CONFIG_H_

#include <cstdint>
#include <string>

#include "losses/vq-losses.h"

namespace vqvc {

enum class Variant { kBaseline, kCycle, kGan, kCycleGan, kCycleGanStft };

Variant ParseVariant(const std::string &s);
std::string VariantName(Variant v);
bool UsesCycle(Variant v);
bool UsesGan(Variant v);

struct TrainConfig {
  Variant variant = Variant::kBaseline;
  int64_t steps = 5000;
  int batch_size = 8;
  int segment_len = 64;
  double lr = 1e-3;
  double disc_lr = 5e-4;
  uint64_t seed = 1;
  int64_t checkpoint_every = 500;
  LossConfig loss;

  // Throws ConfigError.  With the STFT loss in use, segments must be at
  // least as long as the largest STFT window.
  void Check() const;
  // The loss settings actually used: cyclegan_stft forces l1_plus_stft.
  LossConfig EffectiveLoss() const;
};

}  // namespace vqvc

#endif  // VQVC_TRAINER_TRAIN_CONFIG_H_
