// losses/adversarial-losses.h

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

#ifndef VQVC_LOSSES_ADVERSARIAL_LOSSES_H_
#define VQVC_LOSSES_ADVERSARIAL_LOSSES_H_

#include <vector>

#include "vqmodel/hierarchical-vqvae.h"

namespace vqvc {

// Least-squares GAN on raw realness scores:
//   d = 0.5 mean[(real - 1)^2] + 0.5 mean[fake^2]
//   g = 0.5 mean[(fake - 1)^2]
// The caller detaches `fake` from the generator for d and keeps the
// discriminator out of the optimizer for g.
ag::Value LsganDiscriminatorLoss(const ag::Value &real, const ag::Value &fake);
ag::Value LsganGeneratorLoss(const ag::Value &fake);

// Auxiliary-classifier term: softmax cross-entropy of [B, S] logits.
ag::Value AcGanLoss(const ag::Value &speaker_logits,
                    const std::vector<int> &speakers);

// Cross-entropy of the latent speaker classifier against the true speaker,
// behind a gradient reversal layer scaled by lambda.
ag::Value SpeakerAdversarialLoss(const HierarchicalVqvae &model,
                                 const EncodeOutput &enc,
                                 const std::vector<int> &speakers, double lambda);

}  // namespace vqvc

#endif  // VQVC_LOSSES_ADVERSARIAL_LOSSES_H_
