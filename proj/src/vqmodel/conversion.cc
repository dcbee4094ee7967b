// vqmodel/conversion.cc

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

#include "vqmodel/conversion.h"

#include "autograd/checkpoint.h"

namespace vqvc {

using ag::Value;

const char *const kStepTensorName = "meta/steps";

RowMatrix ConvertNormalized(const HierarchicalVqvae &model, const RowMatrix &x,
                            const std::vector<double> &lcf0,
                            const std::vector<double> &uv, int target_speaker,
                            std::array<std::vector<int>, kNumStacks> *indices) {
  const int frames = static_cast<int>(x.rows());
  const int dim = model.config().feat_dim;
  if (x.cols() != dim)
    throw Error(fmt::format("convert: features have {} channels, model expects {}",
                            x.cols(), dim));
  if (lcf0.size() != size_t(frames) || uv.size() != size_t(frames))
    throw Error(fmt::format("convert: aux has {} frames, features have {}",
                            lcf0.size(), frames));
  ag::NoGradScope no_grad;
  Value xv = Value::FromData({1, frames, dim},
                             std::vector<double>(x.data(), x.data() + x.size()));
  Value aux = model.MakeAux(lcf0, uv, {target_speaker}, 1, frames);
  HierarchicalOutput out = model.Forward(xv, aux);
  if (indices)
    for (int s = 0; s < kNumStacks; s++) (*indices)[s] = out.enc.vq[s].indices;
  RowMatrix y(frames, dim);
  std::copy(out.x_hat.data().begin(), out.x_hat.data().end(), y.data());
  return y;
}

ConversionResult ConvertUtterance(const HierarchicalVqvae &model,
                                  const UtteranceFeatures &source,
                                  const SpeakerStats &source_stats,
                                  const SpeakerStats &target_stats) {
  const int n_spk = model.config().n_speakers;
  if (target_stats.speaker_index < 0 || target_stats.speaker_index >= n_spk)
    throw Error(fmt::format("convert: unknown target speaker index {}",
                            target_stats.speaker_index));
  if (source.f0.NumFrames() != source.log_mel.NumFrames())
    throw Error("convert: F0 and feature frame counts differ");
  RowMatrix x = NormalizeFeatures(source.log_mel.data, source_stats);
  ContinuousF0 cf0 = ContinuousLogF0(source.f0, source_stats);
  ConversionResult r;
  RowMatrix y = ConvertNormalized(model, x, cf0.lcf0, cf0.uv,
                                  target_stats.speaker_index, &r.indices);
  r.converted.data = DenormalizeFeatures(y, target_stats);
  r.converted.kind = FeatureKind::kMelFilterbank;
  r.target_log_f0.resize(cf0.lcf0.size());
  for (size_t t = 0; t < cf0.lcf0.size(); t++)
    r.target_log_f0[t] =
        cf0.lcf0[t] * target_stats.lcf0_std + target_stats.lcf0_mean;
  return r;
}

std::unique_ptr<HierarchicalVqvae> LoadTrainedModel(const std::string &checkpoint_path) {
  std::vector<ag::NamedTensor> t = ag::ReadCheckpoint(checkpoint_path);
  const ag::NamedTensor *steps = ag::FindTensor(t, kStepTensorName);
  if (!steps || steps->data.empty() || steps->data[0] <= 0)
    throw Error(checkpoint_path + ": checkpoint holds no trained model");
  auto model = LoadModel(checkpoint_path);
  return model;
}

}  // namespace vqvc
