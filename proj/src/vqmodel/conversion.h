// vqmodel/conversion.h

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

#ifndef VQVC_VQMODEL_CONVERSION_H_
#define VQVC_VQMODEL_CONVERSION_H_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "signal/pitch.h"
#include "vqmodel/hierarchical-vqvae.h"

namespace vqvc {

struct ConversionResult {
  FeatureSeq converted;  // log-mel in the target speaker's feature domain
  std::array<std::vector<int>, kNumStacks> indices;
  // Source log-F0 moved to the target statistics (z-score under the source,
  // de-normalize under the target).  Reported only; the decoder consumes the
  // z-scored value, which is the same whichever speaker is targeted.
  std::vector<double> target_log_f0;
};

// Normalized-domain core: x is T x feat_dim, already z-scored.  Returns the
// decoder output (T x feat_dim) and fills `indices` when non-null.
RowMatrix ConvertNormalized(const HierarchicalVqvae &model, const RowMatrix &x,
                            const std::vector<double> &lcf0,
                            const std::vector<double> &uv, int target_speaker,
                            std::array<std::vector<int>, kNumStacks> *indices);

// Source features are normalized with source stats, decoded with the target
// speaker code, and de-normalized with target stats.  Runs without
// recording a tape.
ConversionResult ConvertUtterance(const HierarchicalVqvae &model,
                                  const UtteranceFeatures &source,
                                  const SpeakerStats &source_stats,
                                  const SpeakerStats &target_stats);

// LoadModel plus a check that the checkpoint came out of training.
std::unique_ptr<HierarchicalVqvae> LoadTrainedModel(const std::string &checkpoint_path);

// Name of the scalar tensor holding the number of completed training steps.
extern const char *const kStepTensorName;

}  // namespace vqvc

#endif  // VQVC_VQMODEL_CONVERSION_H_
