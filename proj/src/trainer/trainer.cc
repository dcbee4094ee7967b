// trainer/trainer.cc

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

#include "trainer/trainer.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "autograd/checkpoint.h"
#include "base/file-util.h"
#include "vqmodel/conversion.h"

namespace vqvc {

using ag::Value;

namespace {

std::vector<int> OtherSpeakers(const std::vector<int> &speakers, int n_speakers,
                               std::mt19937_64 *rng) {
  std::vector<int> out;
  for (int s : speakers) {
    if (n_speakers < 2) {
      out.push_back(s);
      continue;
    }
    int r = std::uniform_int_distribution<int>(0, n_speakers - 2)(*rng);
    out.push_back(r >= s ? r + 1 : r);
  }
  return out;
}

Value Detached(const Value &v) { return Value::FromData(v.shape(), v.data()); }

std::string Breakdown(const LossReport &r) {
  std::string s;
  for (const auto &n : kLossNames)
    s += fmt::format("{}{}={:.6g}", s.empty() ? "" : " ", n, r.Get(n));
  return s;
}

}  // namespace

double WeightedTotal(const LossReport &r, const LossConfig &loss, Variant v) {
  double t = r.Get("reconstruction") + r.Get("codebook") +
             loss.beta * r.Get("commitment") + r.Get("spk_adv");
  if (loss.recon_kind == ReconKind::kL1PlusStft) t += loss.stft_weight * r.Get("stft");
  if (UsesCycle(v)) t += loss.cycle_weight * r.Get("cycle");
  if (UsesGan(v)) t += loss.adv_weight * (r.Get("adv_g") + r.Get("ac_fake"));
  return t;
}

Trainer::Trainer(const TrainConfig &cfg, HierarchicalVqvae *model,
                 const TrainCorpus *corpus)
    : cfg_(cfg),
      loss_(cfg.EffectiveLoss()),
      model_(model),
      corpus_(corpus),
      gen_opt_(model->generator_params(), ag::AdamOptions{cfg.lr}),
      disc_opt_(model->discriminator_params(), ag::AdamOptions{cfg.disc_lr}) {
  cfg.Check();
  if (corpus->n_speakers != model->config().n_speakers)
    throw ConfigError(fmt::format("train: corpus has {} speakers, model {}",
                                  corpus->n_speakers, model->config().n_speakers));
  if (corpus->train_by_speaker.size() != size_t(corpus->n_speakers))
    throw Error("train: corpus is not indexed");
  for (auto &u : code_usage_) u.assign(model->config().codebook_size, 0);
}

StepInputs Trainer::SampleStep(int64_t step) const {
  std::mt19937_64 rng(MixSeed(cfg_.seed, static_cast<uint64_t>(step)));
  StepInputs in;
  in.batch = SampleBatch(*corpus_, cfg_.batch_size, cfg_.segment_len, &rng);
  in.targets = OtherSpeakers(in.batch.speakers, corpus_->n_speakers, &rng);
  if (UsesGan(cfg_.variant)) {
    const std::vector<int> &who = loss_.adv_target == AdvTarget::kConverted
                                      ? in.targets
                                      : in.batch.speakers;
    in.real = SampleSpeakerBatch(*corpus_, who, cfg_.segment_len, &rng);
  }
  return in;
}

GeneratorPass Trainer::GeneratorObjective(const StepInputs &in) const {
  const Batch &b = in.batch;
  const HierarchicalVqvae &m = *model_;
  GeneratorPass g;
  g.report = LossReport::Empty();
  Value x = b.FeatureValue();
  Value aux_org = m.MakeAux(b.lcf0, b.uv, b.speakers, b.batch, b.frames);
  g.out = m.Forward(x, aux_org, b.mask);
  VqObjective obj = VqvaeObjective(x, g.out.x_hat, g.out.enc.vq, loss_, b.mask);
  g.total = obj.total;
  g.report.values["reconstruction"] = obj.reconstruction.item();
  g.report.values["codebook"] = obj.codebook.item();
  g.report.values["commitment"] = obj.commitment.item();
  if (obj.stft.defined()) g.report.values["stft"] = obj.stft.item();

  if (loss_.spkadv_lambda > 0.0) {
    Value spk = SpeakerAdversarialLoss(m, g.out.enc, b.speakers, loss_.spkadv_lambda);
    g.report.values["spk_adv"] = spk.item();
    g.total = ag::Add(g.total, spk);
  }

  Value aux_tar;
  if (UsesCycle(cfg_.variant) || UsesGan(cfg_.variant))
    aux_tar = m.MakeAux(b.lcf0, b.uv, in.targets, b.batch, b.frames);

  if (UsesCycle(cfg_.variant)) {
    Value y = m.Decode(g.out.enc, aux_tar);
    EncodeOutput enc2 = m.Encode(y, b.mask);
    Value x_cyc = m.Decode(enc2, aux_org);
    ReconKind base = loss_.recon_kind == ReconKind::kL2 ? ReconKind::kL2 : ReconKind::kL1;
    Value cyc = ReconstructionLoss(x, x_cyc, base, b.mask);
    for (int s = 0; s < kNumStacks; s++)
      cyc = ag::Add(cyc, ag::Add(enc2.vq[s].codebook_loss,
                                 ag::Scale(enc2.vq[s].commitment_loss, loss_.beta)));
    g.report.values["cycle"] = cyc.item();
    g.total = ag::Add(g.total, ag::Scale(cyc, loss_.cycle_weight));
  }

  if (UsesGan(cfg_.variant)) {
    // The stop-gradient on the codes keeps the adversarial gradient inside
    // the decoder.
    std::array<Value, kNumStacks> codes;
    for (int s = 0; s < kNumStacks; s++)
      codes[s] = ag::StopGradient(g.out.enc.vq[s].st);
    bool converted = loss_.adv_target == AdvTarget::kConverted;
    g.fake = m.Decode(codes, converted ? aux_tar : aux_org);
    g.fake_speakers = converted ? in.targets : b.speakers;
    DiscriminatorOutput d =
        m.Discriminate(g.fake, HierarchicalVqvae::MakeDiscAux(b.lcf0, b.uv, b.batch,
                                                              b.frames));
    Value adv_g = LsganGeneratorLoss(d.realness);
    Value ac_fake = AcGanLoss(d.speaker_logits, g.fake_speakers);
    g.report.values["adv_g"] = adv_g.item();
    g.report.values["ac_fake"] = ac_fake.item();
    g.total = ag::Add(g.total, ag::Scale(ag::Add(adv_g, ac_fake), loss_.adv_weight));
  }
  g.report.total = g.total.item();
  g.report.values["total"] = g.report.total;
  return g;
}

Value Trainer::DiscriminatorObjective(const StepInputs &in, const GeneratorPass &g,
                                      LossReport *report) const {
  const HierarchicalVqvae &m = *model_;
  const Batch &b = in.batch;
  const Batch &r = in.real;
  Value fake = Detached(g.fake);
  DiscriminatorOutput df =
      m.Discriminate(fake, HierarchicalVqvae::MakeDiscAux(b.lcf0, b.uv, b.batch, b.frames));
  DiscriminatorOutput dr = m.Discriminate(
      r.FeatureValue(), HierarchicalVqvae::MakeDiscAux(r.lcf0, r.uv, r.batch, r.frames));
  Value d_loss = LsganDiscriminatorLoss(dr.realness, df.realness);
  Value ac_real = AcGanLoss(dr.speaker_logits, r.speakers);
  if (report) {
    report->values["adv_d"] = d_loss.item();
    report->values["ac_real"] = ac_real.item();
  }
  return ag::Add(d_loss, ac_real);
}

GeneratorPass Trainer::GeneratorStep(const StepInputs &in, int64_t step) {
  GeneratorPass g;
  {
    ag::Tape tape;
    ag::TapeScope scope(&tape);
    model_->generator_params().ZeroGrad();
    model_->discriminator_params().ZeroGrad();
    g = GeneratorObjective(in);
    if (!std::isfinite(g.report.total))
      throw Error(fmt::format("train: non-finite loss at step {}: {}", step,
                              Breakdown(g.report)));
    tape.Backward(g.total);
  }
  try {
    gen_opt_.Step();
  } catch (const Error &e) {
    throw Error(fmt::format("train: step {}: {} ({})", step, e.what(),
                            Breakdown(g.report)));
  }
  for (int s = 0; s < kNumStacks; s++)
    for (int k : g.out.enc.vq[s].indices) code_usage_[s][k]++;
  return g;
}

void Trainer::DiscriminatorStep(const StepInputs &in, GeneratorPass *g,
                                int64_t step) {
  ag::Tape tape;
  ag::TapeScope scope(&tape);
  model_->discriminator_params().ZeroGrad();
  Value d = DiscriminatorObjective(in, *g, &g->report);
  if (!std::isfinite(d.item()))
    throw Error(fmt::format("train: non-finite discriminator loss at step {}: {}",
                            step, Breakdown(g->report)));
  tape.Backward(d);
  disc_opt_.Step();
}

LossReport Trainer::TrainStep(int64_t step) {
  StepInputs in = SampleStep(step);
  GeneratorPass g = GeneratorStep(in, step);
  if (UsesGan(cfg_.variant)) DiscriminatorStep(in, &g, step);
  steps_done_ = step;
  return g.report;
}

DevResult Trainer::Evaluate(const std::vector<TrainUtterance> &utts) const {
  if (utts.empty()) throw Error("evaluate: empty utterance set");
  ag::NoGradScope no_grad;
  DevResult r;
  for (const TrainUtterance &u : utts) {
    Batch b = UtteranceBatch(u);
    Value x = b.FeatureValue();
    Value aux = model_->MakeAux(b.lcf0, b.uv, b.speakers, 1, b.frames);
    HierarchicalOutput out = model_->Forward(x, aux);
    LossConfig l = loss_;
    if (l.recon_kind == ReconKind::kL1PlusStft) l.recon_kind = ReconKind::kL1;
    VqObjective o = VqvaeObjective(x, out.x_hat, out.enc.vq, l);
    r.reconstruction += o.reconstruction.item();
    r.objective += o.total.item();
  }
  r.reconstruction /= utts.size();
  r.objective /= utts.size();
  return r;
}

void Trainer::SaveCheckpoint(const std::string &path) const {
  std::vector<ag::NamedTensor> extra = gen_opt_.ExportState("optim/gen/");
  std::vector<ag::NamedTensor> d = disc_opt_.ExportState("optim/disc/");
  extra.insert(extra.end(), d.begin(), d.end());
  extra.push_back({kStepTensorName, {1}, {static_cast<float>(steps_done_)}});
  SaveModel(*model_, path, extra);
}

TrainResult Trainer::Run(const std::string &checkpoint_dir,
                         const std::string &log_path) {
  std::filesystem::create_directories(checkpoint_dir);
  TrainResult result;
  result.log_path = log_path;
  std::string log = "step,loss_name,value\n";
  auto log_dev = [&](int64_t step) {
    if (corpus_->dev.empty()) return;
    DevResult d = Evaluate(corpus_->dev);
    result.dev_history.push_back({step, d});
    log += fmt::format("{},dev_reconstruction,{:.9g}\n", step, d.reconstruction);
    log += fmt::format("{},dev_objective,{:.9g}\n", step, d.objective);
    spdlog::info("step {}: dev reconstruction {:.5f}, dev objective {:.5f}", step,
                 d.reconstruction, d.objective);
  };
  log_dev(steps_done_);
  auto start = std::chrono::steady_clock::now();
  const int64_t first = steps_done_ + 1, last = steps_done_ + cfg_.steps;
  for (int64_t step = first; step <= last; step++) {
    LossReport r = TrainStep(step);
    result.last_report = r;
    for (const auto &n : kLossNames)
      log += fmt::format("{},{},{:.9g}\n", step, n, r.Get(n));
    if (step % 100 == 0 || step == last) {
      double sec = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start).count();
      fmt::print(stderr, "[train] step {}/{} total {:.5f} reconstruction {:.5f} ({:.1f}s)\n",
                 step, last, r.total, r.Get("reconstruction"), sec);
    }
    if (step % cfg_.checkpoint_every == 0 && step != last) {
      SaveCheckpoint(fmt::format("{}/step{:06d}.crkp", checkpoint_dir, step));
      log_dev(step);
    }
  }
  log_dev(last);
  result.checkpoint_path = checkpoint_dir + "/model.crkp";
  SaveCheckpoint(result.checkpoint_path);
  AtomicWrite(log_path, [&](std::ostream &os) { os << log; });
  result.code_usage = code_usage_;
  int dead = 0;
  for (const auto &u : code_usage_)
    for (int64_t c : u) dead += c == 0;
  spdlog::info("training done: {} unused codes across {} stacks", dead, kNumStacks);
  return result;
}

}  // namespace vqvc
