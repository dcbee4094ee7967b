// trainer/train-config.cc

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

#include "trainer/train-config.h"

namespace vqvc {

Variant ParseVariant(const std::string &s) {
  if (s == "baseline") return Variant::kBaseline;
  if (s == "cycle") return Variant::kCycle;
  if (s == "gan") return Variant::kGan;
  if (s == "cyclegan") return Variant::kCycleGan;
  if (s == "cyclegan_stft") return Variant::kCycleGanStft;
  throw ConfigError("unknown variant '" + s +
                    "' (baseline, cycle, gan, cyclegan, cyclegan_stft)");
}

std::string VariantName(Variant v) {
  switch (v) {
    case Variant::kBaseline: return "baseline";
    case Variant::kCycle: return "cycle";
    case Variant::kGan: return "gan";
    case Variant::kCycleGan: return "cyclegan";
    default: return "cyclegan_stft";
  }
}

bool UsesCycle(Variant v) {
  return v == Variant::kCycle || v == Variant::kCycleGan ||
         v == Variant::kCycleGanStft;
}

bool UsesGan(Variant v) {
  return v == Variant::kGan || v == Variant::kCycleGan ||
         v == Variant::kCycleGanStft;
}

LossConfig TrainConfig::EffectiveLoss() const {
  LossConfig l = loss;
  if (variant == Variant::kCycleGanStft) l.recon_kind = ReconKind::kL1PlusStft;
  return l;
}

void TrainConfig::Check() const {
  if (steps <= 0) throw ConfigError("train: steps must be > 0");
  if (batch_size < 1) throw ConfigError("train: batch_size must be >= 1");
  if (segment_len < 1) throw ConfigError("train: segment_len must be >= 1");
  if (!(lr > 0.0) || !(disc_lr > 0.0))
    throw ConfigError("train: learning rates must be > 0");
  if (checkpoint_every < 1) throw ConfigError("train: checkpoint_every must be >= 1");
  LossConfig l = EffectiveLoss();
  l.Check();
  if (l.recon_kind == ReconKind::kL1PlusStft) {
    int win = MaxStftWindow(l.stft_resolutions);
    if (segment_len < win)
      throw ConfigError(fmt::format(
          "train: segment_len {} is shorter than the largest STFT-loss window {}",
          segment_len, win));
  }
}

}  // namespace vqvc
