// vqmodel/hierarchical-vqvae.h

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

#ifndef VQVC_VQMODEL_HIERARCHICAL_VQVAE_H_
#define VQVC_VQMODEL_HIERARCHICAL_VQVAE_H_

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "autograd/parameters.h"
#include "netblocks/discriminator.h"
#include "netblocks/wavenet.h"
#include "vqmodel/quantizer.h"

namespace vqvc {

enum Stack { kBottom = 0, kMiddle = 1, kTop = 2 };
constexpr int kNumStacks = 3;
extern const char *const kStackNames[kNumStacks];

struct ModelConfig {
  int feat_dim = 80;
  int n_speakers = 4;
  int codebook_size = 32;
  int latent_dim = 32;
  int spk_embed_dim = 8;
  WaveNetConfig encoder;
  WaveNetConfig decoder;
  WaveNetConfig discriminator;
  uint64_t seed = 1;
  void Check() const;
  // Decoder conditioning width: lcf0, uv, speaker embedding.
  int AuxDim() const { return 2 + spk_embed_dim; }
};

std::string ModelConfigToJson(const ModelConfig &cfg);
ModelConfig ModelConfigFromJson(const std::string &text);

struct EncodeOutput {
  // Quantizer inputs per stack.  For the lower stacks this is the encoder
  // output plus the decoded contribution of the stack above.
  std::array<ag::Value, kNumStacks> h;
  std::array<VQResult, kNumStacks> vq;
};

struct HierarchicalOutput {
  ag::Value x_hat;  // [B, T, feat_dim]
  EncodeOutput enc;
};

// Three encoders run in sequence (bottom, middle, top).  The top latent is
// quantized and decoded to the latent width, added to the middle encoder
// output and quantized again; likewise for the bottom.  The bottom decoder
// sees the three quantized sequences concatenated along channels plus the
// auxiliary features.  Only the bottom decoder is conditioned, so codes do
// not depend on the target speaker.
class HierarchicalVqvae {
 public:
  explicit HierarchicalVqvae(const ModelConfig &cfg);

  const ModelConfig &config() const { return cfg_; }
  // Encoders, decoders, codebooks, speaker embedding, speaker classifier.
  ag::ParameterStore &generator_params() { return gen_; }
  const ag::ParameterStore &generator_params() const { return gen_; }
  // The adversarial discriminator ("disc/...").
  ag::ParameterStore &discriminator_params() { return disc_; }
  const ag::ParameterStore &discriminator_params() const { return disc_; }

  // x is [B, T, feat_dim]; frame_weights has B*T entries or is empty.
  EncodeOutput Encode(const ag::Value &x,
                      const std::vector<double> &frame_weights = {}) const;
  // Bottom decoder on the straight-through outputs of `codes` (one per
  // stack).  aux comes from MakeAux.
  ag::Value Decode(const std::array<ag::Value, kNumStacks> &codes,
                   const ag::Value &aux) const;
  ag::Value Decode(const EncodeOutput &enc, const ag::Value &aux) const;
  HierarchicalOutput Forward(const ag::Value &x, const ag::Value &aux,
                             const std::vector<double> &frame_weights = {}) const;

  // [B, T, 2 + spk_embed_dim].  lcf0 and uv hold B*T values; `speakers`
  // one index per item.
  ag::Value MakeAux(const std::vector<double> &lcf0, const std::vector<double> &uv,
                    const std::vector<int> &speakers, int batch, int frames) const;
  // [B, T, 2]: lcf0 and uv only (the discriminator classifies speakers
  // rather than being told them).
  static ag::Value MakeDiscAux(const std::vector<double> &lcf0,
                               const std::vector<double> &uv, int batch,
                               int frames);

  DiscriminatorOutput Discriminate(const ag::Value &x,
                                   const ag::Value &disc_aux) const;
  // Speaker logits [B, S] from the concatenated quantizer inputs, behind a
  // gradient reversal layer scaled by lambda.
  ag::Value SpeakerLogits(const EncodeOutput &enc, double lambda) const;
  const Discriminator &speaker_classifier() const { return speaker_classifier_; }

  std::vector<ag::NamedTensor> Export() const;
  void Import(const std::vector<ag::NamedTensor> &tensors);

 private:
  ModelConfig cfg_;
  ag::ParameterStore gen_, disc_;
  std::array<WaveNet, kNumStacks> encoders_;
  std::array<WaveNet, kNumStacks> decoders_;  // bottom decoder emits features
  std::array<ag::Value, kNumStacks> codebooks_;
  ag::Value spk_embed_;
  Discriminator speaker_classifier_;
  Discriminator discriminator_;
};

// Checkpoint plus a JSON sidecar holding the model config, next to it with
// the extension replaced by ".json".
std::string ModelConfigPath(const std::string &checkpoint_path);
void SaveModel(const HierarchicalVqvae &model, const std::string &checkpoint_path,
               const std::vector<ag::NamedTensor> &extra = {});
std::unique_ptr<HierarchicalVqvae> LoadModel(const std::string &checkpoint_path);

}  // namespace vqvc

#endif  // VQVC_VQMODEL_HIERARCHICAL_VQVAE_H_
