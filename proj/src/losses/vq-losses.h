// losses/vq-losses.h

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

#ifndef VQVC_LOSSES_VQ_LOSSES_H_
#define VQVC_LOSSES_VQ_LOSSES_H_

#include <array>
#include <map>
#include <string>
#include <vector>

#include "losses/stft-loss.h"
#include "vqmodel/hierarchical-vqvae.h"

namespace vqvc {

enum class ReconKind { kL1, kL2, kL1PlusStft };
enum class AdvTarget { kReconstructed, kConverted };

ReconKind ParseReconKind(const std::string &s);
std::string ReconKindName(ReconKind k);
AdvTarget ParseAdvTarget(const std::string &s);
std::string AdvTargetName(AdvTarget t);

struct LossConfig {
  double beta = 0.25;
  double cycle_weight = 1.0;
  double adv_weight = 1.0;
  double spkadv_lambda = 0.1;
  double stft_weight = 1.0;
  AdvTarget adv_target = AdvTarget::kConverted;
  ReconKind recon_kind = ReconKind::kL2;
  std::vector<StftResolution> stft_resolutions = DefaultStftResolutions();
  void Check() const;
};

// Reported scalars in a fixed order; absent terms are reported as 0.
extern const std::vector<std::string> kLossNames;

struct LossReport {
  std::map<std::string, double> values;
  double total = 0.0;
  double Get(const std::string &name) const;
  // Zero-filled report holding every name.
  static LossReport Empty();
};

// Mean of squared (l2) or absolute (l1) differences over every entry of
// valid frames.  frame_weights has one entry per frame or is empty.
ag::Value ReconstructionLoss(const ag::Value &x, const ag::Value &x_hat,
                             ReconKind kind,
                             const std::vector<double> &frame_weights = {});

struct VqObjective {
  ag::Value total;
  ag::Value reconstruction;
  ag::Value codebook;    // summed over stacks
  ag::Value commitment;  // summed over stacks, before beta
  ag::Value stft;        // only for kL1PlusStft, otherwise undefined
};

//   recon(x, x_hat) + sum_stacks (codebook + beta * commitment)
// and, for kL1PlusStft, + stft_weight * multires_stft(x, x_hat).
VqObjective VqvaeObjective(const ag::Value &x, const ag::Value &x_hat,
                           const std::array<VQResult, kNumStacks> &vq,
                           const LossConfig &cfg,
                           const std::vector<double> &frame_weights = {});

}  // namespace vqvc

#endif  // VQVC_LOSSES_VQ_LOSSES_H_
