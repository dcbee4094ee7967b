// vqmodel/hierarchical-vqvae.cc

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

#include "vqmodel/hierarchical-vqvae.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "autograd/checkpoint.h"
#include "base/file-util.h"

namespace vqvc {

using ag::Value;
using nlohmann::json;

const char *const kStackNames[kNumStacks] = {"bottom", "middle", "top"};

void ModelConfig::Check() const {
  if (feat_dim < 1 || latent_dim < 1 || spk_embed_dim < 0)
    throw ConfigError("model: feature, latent and embedding sizes must be positive");
  if (codebook_size < 2) throw ConfigError("model: codebook_size must be >= 2");
  if (n_speakers < 1) throw ConfigError("model: need at least one speaker");
  encoder.Check();
  decoder.Check();
  discriminator.Check();
}

namespace {

json WaveNetToJson(const WaveNetConfig &c) {
  return {{"layers", c.layers},
          {"channels", c.channels},
          {"kernel_size", c.kernel_size},
          {"causal", c.causal}};
}

WaveNetConfig WaveNetFromJson(const json &j) {
  WaveNetConfig c;
  c.layers = j.at("layers");
  c.channels = j.at("channels");
  c.kernel_size = j.at("kernel_size");
  c.causal = j.at("causal");
  return c;
}

}  // namespace

std::string ModelConfigToJson(const ModelConfig &cfg) {
  json j = {{"feat_dim", cfg.feat_dim},
            {"n_speakers", cfg.n_speakers},
            {"codebook_size", cfg.codebook_size},
            {"latent_dim", cfg.latent_dim},
            {"spk_embed_dim", cfg.spk_embed_dim},
            {"encoder", WaveNetToJson(cfg.encoder)},
            {"decoder", WaveNetToJson(cfg.decoder)},
            {"discriminator", WaveNetToJson(cfg.discriminator)},
            {"seed", cfg.seed}};
  return j.dump(2) + "\n";
}

ModelConfig ModelConfigFromJson(const std::string &text) {
  try {
    json j = json::parse(text);
    ModelConfig cfg;
    cfg.feat_dim = j.at("feat_dim");
    cfg.n_speakers = j.at("n_speakers");
    cfg.codebook_size = j.at("codebook_size");
    cfg.latent_dim = j.at("latent_dim");
    cfg.spk_embed_dim = j.at("spk_embed_dim");
    cfg.encoder = WaveNetFromJson(j.at("encoder"));
    cfg.decoder = WaveNetFromJson(j.at("decoder"));
    cfg.discriminator = WaveNetFromJson(j.at("discriminator"));
    cfg.seed = j.at("seed");
    return cfg;
  } catch (const json::exception &e) {
    throw Error(std::string("model config: ") + e.what());
  }
}

HierarchicalVqvae::HierarchicalVqvae(const ModelConfig &cfg) : cfg_(cfg) {
  cfg.Check();
  std::mt19937_64 rng(cfg.seed);
  const int dz = cfg.latent_dim;
  WaveNetConfig enc = cfg.encoder, dec = cfg.decoder;
  enc.aux_dim = 0;
  for (int s = 0; s < kNumStacks; s++) {
    int in = s == kBottom ? cfg.feat_dim : dz;
    encoders_[s] = WaveNet(&gen_, std::string("enc/") + kStackNames[s], in, dz,
                           enc, &rng);
  }
  for (int s = kNumStacks - 1; s >= 0; s--) {
    WaveNetConfig d = dec;
    d.aux_dim = s == kBottom ? cfg.AuxDim() : 0;
    int in = s == kBottom ? kNumStacks * dz : dz;
    int out = s == kBottom ? cfg.feat_dim : dz;
    decoders_[s] = WaveNet(&gen_, std::string("dec/") + kStackNames[s], in, out,
                           d, &rng);
  }
  const double bound = 1.0 / cfg.codebook_size;
  for (int s = 0; s < kNumStacks; s++)
    codebooks_[s] = gen_.AddUniform(std::string("codebook/") + kStackNames[s],
                                    {cfg.codebook_size, dz}, bound, &rng);
  spk_embed_ = gen_.AddUniform("spk_embed", {cfg.n_speakers, std::max(cfg.spk_embed_dim, 1)},
                               1.0, &rng);
  WaveNetConfig clf = cfg.discriminator;
  clf.aux_dim = 0;
  speaker_classifier_ = Discriminator(&gen_, "spkclf", kNumStacks * dz,
                                      cfg.n_speakers, clf, false, &rng);
  WaveNetConfig disc = cfg.discriminator;
  disc.aux_dim = 2;
  discriminator_ = Discriminator(&disc_, "disc", cfg.feat_dim, cfg.n_speakers,
                                 disc, true, &rng);
}

EncodeOutput HierarchicalVqvae::Encode(const Value &x,
                                       const std::vector<double> &w) const {
  if (x.rank() != 3 || x.dim(2) != cfg_.feat_dim)
    throw Error(fmt::format("vqvae: input must be [B, T, {}], got {}",
                            cfg_.feat_dim, ag::ShapeString(x.shape())));
  EncodeOutput out;
  Value e_bot = encoders_[kBottom].Forward(x, Value());
  Value e_mid = encoders_[kMiddle].Forward(e_bot, Value());
  Value e_top = encoders_[kTop].Forward(e_mid, Value());
  out.h[kTop] = e_top;
  out.vq[kTop] = Quantize(e_top, codebooks_[kTop], w);
  out.h[kMiddle] = ag::Add(e_mid, decoders_[kTop].Forward(out.vq[kTop].st, Value()));
  out.vq[kMiddle] = Quantize(out.h[kMiddle], codebooks_[kMiddle], w);
  out.h[kBottom] =
      ag::Add(e_bot, decoders_[kMiddle].Forward(out.vq[kMiddle].st, Value()));
  out.vq[kBottom] = Quantize(out.h[kBottom], codebooks_[kBottom], w);
  return out;
}

Value HierarchicalVqvae::Decode(const std::array<Value, kNumStacks> &codes,
                                const Value &aux) const {
  Value z = ag::Concat({codes[kBottom], codes[kMiddle], codes[kTop]}, -1);
  return decoders_[kBottom].Forward(z, aux);
}

Value HierarchicalVqvae::Decode(const EncodeOutput &enc, const Value &aux) const {
  std::array<Value, kNumStacks> codes = {enc.vq[kBottom].st, enc.vq[kMiddle].st,
                                         enc.vq[kTop].st};
  return Decode(codes, aux);
}

HierarchicalOutput HierarchicalVqvae::Forward(const Value &x, const Value &aux,
                                              const std::vector<double> &w) const {
  HierarchicalOutput out;
  out.enc = Encode(x, w);
  out.x_hat = Decode(out.enc, aux);
  return out;
}

Value HierarchicalVqvae::MakeAux(const std::vector<double> &lcf0,
                                 const std::vector<double> &uv,
                                 const std::vector<int> &speakers, int batch,
                                 int frames) const {
  if (speakers.size() != size_t(batch))
    throw Error("vqvae: one speaker index per batch item required");
  for (int s : speakers)
    if (s < 0 || s >= cfg_.n_speakers)
      throw Error(fmt::format("vqvae: speaker index {} out of range [0, {})", s,
                              cfg_.n_speakers));
  Value f0 = MakeDiscAux(lcf0, uv, batch, frames);
  if (cfg_.spk_embed_dim == 0) return f0;
  std::vector<int> per_frame(size_t(batch) * frames);
  for (int b = 0; b < batch; b++)
    std::fill_n(per_frame.begin() + size_t(b) * frames, frames, speakers[b]);
  Value emb = ag::EmbeddingLookup(spk_embed_, per_frame, {batch, frames});
  return ag::Concat({f0, emb}, -1);
}

Value HierarchicalVqvae::MakeDiscAux(const std::vector<double> &lcf0,
                                     const std::vector<double> &uv, int batch,
                                     int frames) {
  const size_t n = size_t(batch) * frames;
  if (lcf0.size() != n || uv.size() != n)
    throw Error(fmt::format("vqvae: aux has {} / {} frames, features have {}",
                            lcf0.size(), uv.size(), n));
  std::vector<double> data(2 * n);
  for (size_t i = 0; i < n; i++) {
    data[2 * i] = lcf0[i];
    data[2 * i + 1] = uv[i];
  }
  return Value::FromData({batch, frames, 2}, std::move(data));
}

DiscriminatorOutput HierarchicalVqvae::Discriminate(const Value &x,
                                                    const Value &disc_aux) const {
  return discriminator_.Forward(x, disc_aux);
}

Value HierarchicalVqvae::SpeakerLogits(const EncodeOutput &enc,
                                       double lambda) const {
  Value h = ag::Concat({enc.h[kBottom], enc.h[kMiddle], enc.h[kTop]}, -1);
  return SpeakerClassifierLogits(speaker_classifier_, h, lambda);
}

std::vector<ag::NamedTensor> HierarchicalVqvae::Export() const {
  std::vector<ag::NamedTensor> t = gen_.Export();
  std::vector<ag::NamedTensor> d = disc_.Export();
  t.insert(t.end(), d.begin(), d.end());
  return t;
}

void HierarchicalVqvae::Import(const std::vector<ag::NamedTensor> &tensors) {
  gen_.Import(tensors);
  disc_.Import(tensors);
}

std::string ModelConfigPath(const std::string &checkpoint_path) {
  return std::filesystem::path(checkpoint_path).replace_extension(".json").string();
}

void SaveModel(const HierarchicalVqvae &model, const std::string &checkpoint_path,
               const std::vector<ag::NamedTensor> &extra) {
  std::vector<ag::NamedTensor> t = model.Export();
  t.insert(t.end(), extra.begin(), extra.end());
  ag::WriteCheckpoint(t, checkpoint_path);
  std::string js = ModelConfigToJson(model.config());
  AtomicWrite(ModelConfigPath(checkpoint_path),
              [&](std::ostream &os) { os << js; });
}

std::unique_ptr<HierarchicalVqvae> LoadModel(const std::string &checkpoint_path) {
  std::string cfg_path = ModelConfigPath(checkpoint_path);
  std::ifstream is(cfg_path);
  if (!is) throw Error("cannot open model config " + cfg_path);
  std::stringstream ss;
  ss << is.rdbuf();
  auto model = std::make_unique<HierarchicalVqvae>(ModelConfigFromJson(ss.str()));
  model->Import(ag::ReadCheckpoint(checkpoint_path));
  return model;
}

}  // namespace vqvc
