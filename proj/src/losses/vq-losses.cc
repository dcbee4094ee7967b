// losses/vq-losses.cc

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

#include "losses/vq-losses.h"

#include <cmath>

namespace vqvc {

using ag::Value;

const std::vector<std::string> kLossNames = {
    "reconstruction", "codebook", "commitment", "cycle",  "adv_g",  "adv_d",
    "ac_real",        "ac_fake",  "spk_adv",    "stft",   "total"};

ReconKind ParseReconKind(const std::string &s) {
  if (s == "l1") return ReconKind::kL1;
  if (s == "l2") return ReconKind::kL2;
  if (s == "l1_plus_stft") return ReconKind::kL1PlusStft;
  throw ConfigError("unknown recon_kind '" + s + "' (l1, l2, l1_plus_stft)");
}

std::string ReconKindName(ReconKind k) {
  switch (k) {
    case ReconKind::kL1: return "l1";
    case ReconKind::kL2: return "l2";
    default: return "l1_plus_stft";
  }
}

AdvTarget ParseAdvTarget(const std::string &s) {
  if (s == "reconstructed") return AdvTarget::kReconstructed;
  if (s == "converted") return AdvTarget::kConverted;
  throw ConfigError("unknown adv_target '" + s + "' (reconstructed, converted)");
}

std::string AdvTargetName(AdvTarget t) {
  return t == AdvTarget::kReconstructed ? "reconstructed" : "converted";
}

void LossConfig::Check() const {
  for (auto [name, v] : {std::pair{"beta", beta},
                         {"cycle_weight", cycle_weight},
                         {"adv_weight", adv_weight},
                         {"spkadv_lambda", spkadv_lambda},
                         {"stft_weight", stft_weight}})
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ConfigError(fmt::format("loss: {} must be finite and >= 0, got {}",
                                    name, v));
  for (const auto &r : stft_resolutions)
    if (r.hop_size < 1 || r.win_size < 1 || r.win_size > r.fft_size)
      throw ConfigError(fmt::format("loss: bad stft resolution ({}, {}, {})",
                                    r.fft_size, r.hop_size, r.win_size));
}

double LossReport::Get(const std::string &name) const {
  auto it = values.find(name);
  if (it == values.end()) throw Error("loss report has no entry " + name);
  return it->second;
}

LossReport LossReport::Empty() {
  LossReport r;
  for (const auto &n : kLossNames) r.values[n] = 0.0;
  return r;
}

Value ReconstructionLoss(const Value &x, const Value &x_hat, ReconKind kind,
                         const std::vector<double> &frame_weights) {
  if (x.shape() != x_hat.shape())
    throw Error(fmt::format("reconstruction loss: shape mismatch {} vs {}",
                            ag::ShapeString(x.shape()),
                            ag::ShapeString(x_hat.shape())));
  Value diff = ag::Sub(x, x_hat);
  Value err = kind == ReconKind::kL2 ? ag::Square(diff) : ag::Abs(diff);
  if (frame_weights.empty()) return ag::Mean(err);
  const int dim = x.last_dim();
  const size_t frames = x.numel() / dim;
  if (frame_weights.size() != frames)
    throw Error("reconstruction loss: frame weight count does not match frames");
  double total = 0.0;
  for (double w : frame_weights) total += w;
  if (total <= 0.0) throw Error("reconstruction loss: all frame weights are zero");
  std::vector<double> w(x.numel());
  for (size_t t = 0; t < frames; t++)
    std::fill_n(w.begin() + t * dim, dim, frame_weights[t] / (total * dim));
  return ag::Sum(ag::Mul(err, Value::FromData(x.shape(), std::move(w))));
}

VqObjective VqvaeObjective(const Value &x, const Value &x_hat,
                           const std::array<VQResult, kNumStacks> &vq,
                           const LossConfig &cfg,
                           const std::vector<double> &frame_weights) {
  VqObjective o;
  ReconKind base = cfg.recon_kind == ReconKind::kL2 ? ReconKind::kL2 : ReconKind::kL1;
  o.reconstruction = ReconstructionLoss(x, x_hat, base, frame_weights);
  o.codebook = vq[0].codebook_loss;
  o.commitment = vq[0].commitment_loss;
  for (int s = 1; s < kNumStacks; s++) {
    o.codebook = ag::Add(o.codebook, vq[s].codebook_loss);
    o.commitment = ag::Add(o.commitment, vq[s].commitment_loss);
  }
  o.total = ag::Add(ag::Add(o.reconstruction, o.codebook),
                    ag::Scale(o.commitment, cfg.beta));
  if (cfg.recon_kind == ReconKind::kL1PlusStft) {
    o.stft = MultiResStftLoss(x, x_hat, cfg.stft_resolutions);
    o.total = ag::Add(o.total, ag::Scale(o.stft, cfg.stft_weight));
  }
  return o;
}

}  // namespace vqvc
