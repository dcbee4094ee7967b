// losses/adversarial-losses.cc

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

#include "losses/adversarial-losses.h"

namespace vqvc {

using ag::Value;

Value LsganDiscriminatorLoss(const Value &real, const Value &fake) {
  Value r = ag::Mean(ag::Square(ag::AddScalar(real, -1.0)));
  Value f = ag::Mean(ag::Square(fake));
  return ag::Scale(ag::Add(r, f), 0.5);
}

Value LsganGeneratorLoss(const Value &fake) {
  return ag::Scale(ag::Mean(ag::Square(ag::AddScalar(fake, -1.0))), 0.5);
}

Value AcGanLoss(const Value &speaker_logits, const std::vector<int> &speakers) {
  const int n_spk = speaker_logits.last_dim();
  for (int s : speakers)
    if (s < 0 || s >= n_spk)
      throw Error(fmt::format("ac-gan loss: speaker {} out of range [0, {})", s,
                              n_spk));
  return ag::SoftmaxCrossEntropy(speaker_logits, speakers);
}

Value SpeakerAdversarialLoss(const HierarchicalVqvae &model,
                             const EncodeOutput &enc,
                             const std::vector<int> &speakers, double lambda) {
  return AcGanLoss(model.SpeakerLogits(enc, lambda), speakers);
}

}  // namespace vqvc
