// netblocks/discriminator.cc

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

#include "netblocks/discriminator.h"

namespace vqvc {

using ag::Value;

Discriminator::Discriminator(ag::ParameterStore *params,
                             const std::string &prefix, int in_dim,
                             int n_speakers, const WaveNetConfig &cfg,
                             bool with_realness, std::mt19937_64 *rng)
    : stack_(params, prefix, in_dim, cfg, rng),
      n_speakers_(n_speakers),
      with_realness_(with_realness) {
  if (n_speakers < 1) throw ConfigError("discriminator: need >= 1 speaker");
  const int c = cfg.channels;
  if (with_realness) {
    real_w_ = AddLinearWeight(params, prefix + "/real_w", {c, 1}, c, rng);
    real_b_ = params->AddZeros(prefix + "/real_b", {1});
  }
  spk_w_ = AddLinearWeight(params, prefix + "/spk_w", {c, n_speakers}, c, rng);
  spk_b_ = params->AddZeros(prefix + "/spk_b", {n_speakers});
}

DiscriminatorOutput Discriminator::Forward(const Value &x,
                                           const Value &aux) const {
  if (x.rank() != 3)
    throw Error("discriminator: input must be [B, T, C], got " +
                ag::ShapeString(x.shape()));
  WaveNetOutput o = stack_.Forward(x, aux);
  Value s = ag::Relu(o.skip_sum);
  DiscriminatorOutput out;
  if (with_realness_) out.realness = ag::Add(ag::MatMul(s, real_w_), real_b_);
  out.speaker_logits =
      ag::Add(ag::MatMul(ag::MeanAxis(s, 1), spk_w_), spk_b_);
  return out;
}

Value SpeakerClassifierLogits(const Discriminator &classifier, const Value &h,
                              double lambda) {
  return classifier.Forward(ag::GradientReversal(h, lambda), Value())
      .speaker_logits;
}

}  // namespace vqvc
