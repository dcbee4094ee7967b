// netblocks/discriminator.h

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

#ifndef VQVC_NETBLOCKS_DISCRIMINATOR_H_
#define VQVC_NETBLOCKS_DISCRIMINATOR_H_

#include <string>

#include "netblocks/wavenet.h"

namespace vqvc {

struct DiscriminatorOutput {
  ag::Value realness;        // [B, T, 1], raw scores
  ag::Value speaker_logits;  // [B, S]
};

// WaveNet stack with two heads: a per-frame realness projection and an
// utterance-level speaker classifier (temporal mean pooling, then affine).
// With `with_realness` false only the speaker head exists; that is how the
// speaker classifier on the latents is built.
class Discriminator {
 public:
  Discriminator() = default;
  Discriminator(ag::ParameterStore *params, const std::string &prefix,
                int in_dim, int n_speakers, const WaveNetConfig &cfg,
                bool with_realness, std::mt19937_64 *rng);

  DiscriminatorOutput Forward(const ag::Value &x, const ag::Value &aux) const;
  int n_speakers() const { return n_speakers_; }

 private:
  WaveNetStack stack_;
  int n_speakers_ = 0;
  bool with_realness_ = true;
  ag::Value real_w_, real_b_, spk_w_, spk_b_;
};

// logits = classifier(gradient_reversal(h, lambda)).
ag::Value SpeakerClassifierLogits(const Discriminator &classifier,
                                  const ag::Value &h, double lambda);

}  // namespace vqvc

#endif  // VQVC_NETBLOCKS_DISCRIMINATOR_H_
