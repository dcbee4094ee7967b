// tests/trainer-test.cc

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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "autograd/checkpoint.h"
#include "autograd/grad-check.h"
#include "test-util.h"
#include "trainer/trainer.h"

using namespace vqvc;
using namespace vqvc::ag;

namespace {

TrainConfig ToyTrainConfig(Variant v) {
  TrainConfig tc;
  tc.variant = v;
  tc.steps = 3;
  tc.batch_size = 2;
  tc.segment_len = 12;
  tc.checkpoint_every = 2;
  if (v == Variant::kCycleGanStft) {
    tc.segment_len = 16;
    tc.loss.stft_resolutions = {{8, 2, 4}, {16, 4, 8}};
  }
  return tc;
}

std::string FileBytes(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(is), {});
}

}  // namespace

TEST_CASE("variant names") {
  for (Variant v : {Variant::kBaseline, Variant::kCycle, Variant::kGan, Variant::kCycleGan,
                    Variant::kCycleGanStft})
    CHECK(ParseVariant(VariantName(v)) == v);
  CHECK(VariantName(Variant::kCycleGanStft) == "cyclegan_stft");
  CHECK_THROWS_AS(ParseVariant("wgan"), ConfigError);
  CHECK(UsesCycle(Variant::kCycle));
  CHECK_FALSE(UsesCycle(Variant::kGan));
  CHECK(UsesGan(Variant::kCycleGanStft));
  CHECK_FALSE(UsesGan(Variant::kBaseline));
}

TEST_CASE("training configuration checks") {
  TrainConfig tc;
  tc.variant = Variant::kCycleGanStft;
  tc.segment_len = 64;
  CHECK_THROWS_AS(tc.Check(), ConfigError);
  tc.segment_len = 128;
  CHECK_NOTHROW(tc.Check());
  CHECK(tc.EffectiveLoss().recon_kind == ReconKind::kL1PlusStft);
  TrainConfig b;
  CHECK(b.EffectiveLoss().recon_kind == ReconKind::kL2);
  b.batch_size = 0;
  CHECK_THROWS_AS(b.Check(), ConfigError);
}

TEST_CASE("batches") {
  TrainCorpus c = testing::ToyCorpus(2, 2, 10, 3, 1);
  std::mt19937_64 g(1);
  Batch b = SampleBatch(c, 3, 14, &g);
  CHECK(b.batch == 3);
  CHECK(b.frames == 14);
  CHECK(b.features.size() == 3 * 14 * 3);
  CHECK(b.mask.size() == 3 * 14);
  // Utterances are 10..17 frames, so a 14-frame segment may be padded.
  for (int i = 0; i < 3; i++) {
    int valid = 0;
    for (int t = 0; t < 14; t++) valid += b.mask[i * 14 + t] > 0;
    CHECK(valid >= 10);
  }
  Batch s = SampleSpeakerBatch(c, {1, 1, 0}, 8, &g);
  CHECK(s.speakers == std::vector<int>{1, 1, 0});
  Batch u = UtteranceBatch(c.train[0]);
  CHECK(u.frames == c.train[0].NumFrames());
  CHECK(u.FeatureValue().shape() == Shape{1, u.frames, 3});
}

TEST_CASE("step sampling is a function of (seed, step)") {
  TrainCorpus c = testing::ToyCorpus(3, 3, 16, 5, 2);
  HierarchicalVqvae model(testing::TinyModelConfig());
  Trainer t(ToyTrainConfig(Variant::kCycleGan), &model, &c);
  StepInputs a = t.SampleStep(5), b = t.SampleStep(5), d = t.SampleStep(6);
  CHECK(a.batch.features == b.batch.features);
  CHECK(a.targets == b.targets);
  CHECK(a.real.features == b.real.features);
  CHECK(a.batch.features != d.batch.features);
  for (size_t i = 0; i < a.targets.size(); i++) CHECK(a.targets[i] != a.batch.speakers[i]);
}

TEST_CASE("variant reports") {
  TrainCorpus c = testing::ToyCorpus(3, 3, 16, 5, 3);
  HierarchicalVqvae model(testing::TinyModelConfig());
  {
    Trainer t(ToyTrainConfig(Variant::kBaseline), &model, &c);
    GeneratorPass g = t.GeneratorObjective(t.SampleStep(1));
    for (const char *n : {"cycle", "adv_g", "adv_d", "ac_real", "ac_fake", "stft"})
      CHECK(g.report.Get(n) == 0.0);
    CHECK(g.report.Get("reconstruction") > 0.0);
    CHECK(g.report.Get("spk_adv") > 0.0);
  }
  Trainer t(ToyTrainConfig(Variant::kCycleGanStft), &model, &c);
  LossReport r = t.TrainStep(1);
  for (const auto &n : kLossNames) {
    INFO(n);
    REQUIRE(r.values.count(n) == 1);
    CHECK(std::isfinite(r.Get(n)));
    CHECK(r.Get(n) > 0.0);
  }
}

TEST_CASE("totals recompute from their parts") {
  TrainCorpus c = testing::ToyCorpus(3, 3, 16, 5, 4);
  for (Variant v : {Variant::kBaseline, Variant::kCycle, Variant::kGan, Variant::kCycleGan,
                    Variant::kCycleGanStft}) {
    HierarchicalVqvae model(testing::TinyModelConfig());
    TrainConfig tc = ToyTrainConfig(v);
    Trainer t(tc, &model, &c);
    GeneratorPass g = t.GeneratorObjective(t.SampleStep(2));
    CHECK(g.total.item() == doctest::Approx(g.report.total).epsilon(1e-12));
    CHECK(WeightedTotal(g.report, tc.EffectiveLoss(), v) ==
          doctest::Approx(g.report.total).epsilon(1e-6));
  }
}

TEST_CASE("annihilated terms reduce to the baseline") {
  TrainCorpus c = testing::ToyCorpus(3, 3, 16, 5, 5);
  HierarchicalVqvae model(testing::TinyModelConfig());
  TrainConfig base = ToyTrainConfig(Variant::kBaseline);
  Trainer tb(base, &model, &c);

  TrainConfig gan = ToyTrainConfig(Variant::kGan);
  gan.loss.adv_weight = 0.0;
  Trainer tg(gan, &model, &c);
  StepInputs in = tg.SampleStep(3);
  CHECK(tg.GeneratorObjective(in).total.item() ==
        doctest::Approx(tb.GeneratorObjective(in).total.item()).epsilon(1e-6));

  TrainConfig cyc = ToyTrainConfig(Variant::kCycle);
  cyc.loss.cycle_weight = 0.0;
  Trainer tc(cyc, &model, &c);
  in = tc.SampleStep(4);
  CHECK(tc.GeneratorObjective(in).total.item() == tb.GeneratorObjective(in).total.item());

  // Everything off: exactly the VQVAE objective.
  TrainConfig off = ToyTrainConfig(Variant::kCycleGan);
  off.loss.adv_weight = off.loss.spkadv_lambda = off.loss.cycle_weight = 0.0;
  Trainer to(off, &model, &c);
  in = to.SampleStep(5);
  GeneratorPass g = to.GeneratorObjective(in);
  CHECK(g.report.Get("spk_adv") == 0.0);
  double eq = g.report.Get("reconstruction") + g.report.Get("codebook") +
              off.loss.beta * g.report.Get("commitment");
  CHECK(g.total.item() == doctest::Approx(eq).epsilon(1e-12));

  // Degenerate cycle: conversion target equal to the source speaker.
  TrainConfig c2 = ToyTrainConfig(Variant::kCycle);
  Trainer t2(c2, &model, &c);
  in = t2.SampleStep(6);
  in.targets = in.batch.speakers;
  g = t2.GeneratorObjective(in);
  CHECK(std::isfinite(g.report.Get("cycle")));
  CHECK(g.report.Get("cycle") >= 0.0);
}

TEST_CASE("generator and discriminator updates are disjoint") {
  TrainCorpus c = testing::ToyCorpus(3, 3, 16, 5, 6);
  HierarchicalVqvae model(testing::TinyModelConfig());
  Trainer t(ToyTrainConfig(Variant::kCycleGan), &model, &c);
  StepInputs in = t.SampleStep(1);
  uint64_t gen0 = model.generator_params().Checksum();
  uint64_t disc0 = model.discriminator_params().Checksum();
  GeneratorPass g = t.GeneratorStep(in, 1);
  uint64_t gen1 = model.generator_params().Checksum();
  CHECK(gen1 != gen0);
  CHECK(model.discriminator_params().Checksum() == disc0);
  t.DiscriminatorStep(in, &g, 1);
  CHECK(model.generator_params().Checksum() == gen1);
  CHECK(model.discriminator_params().Checksum() != disc0);
  CHECK(g.report.Get("adv_d") > 0.0);
}

TEST_CASE("full baseline objective gradient at a random step") {
  TrainCorpus c = testing::ToyCorpus(3, 3, 16, 5, 7);
  HierarchicalVqvae model(testing::TinyModelConfig());
  testing::ConditionForGradCheck(model, 7);
  TrainConfig tc = ToyTrainConfig(Variant::kBaseline);
  tc.segment_len = 16;
  Trainer t(tc, &model, &c);
  StepInputs in = t.SampleStep(11);
  std::vector<Value> params;
  std::vector<std::string> names;
  for (const auto &[n, v] : model.generator_params().entries()) {
    params.push_back(v);
    names.push_back(n);
  }
  const double lambda = tc.loss.spkadv_lambda;
  REQUIRE(lambda > 0.0);
  // Forward values see the speaker-adversarial term as is; backward sees it
  // reversed and scaled on everything upstream of the classifier, which
  // includes the upper decoders that condition the lower encoders.  The
  // expected gradient therefore combines finite differences of the whole
  // objective and of that term.
  auto adversarial = [&] {
    const Batch &b = in.batch;
    HierarchicalOutput o = model.Forward(
        b.FeatureValue(), model.MakeAux(b.lcf0, b.uv, b.speakers, b.batch, b.frames), b.mask);
    return SpeakerAdversarialLoss(model, o.enc, b.speakers, lambda);
  };
  GradCheckReport whole = GradCheckDetailed([&] { return t.GeneratorObjective(in).total; }, params);
  GradCheckReport adv = GradCheckDetailed(adversarial, params);
  double worst = 0.0;
  for (size_t k = 0; k < params.size(); k++) {
    double sign = names[k].rfind("spkclf", 0) == 0 ? 1.0 : -lambda;
    std::vector<double> expected = whole.numeric[k];
    for (size_t i = 0; i < expected.size(); i++) expected[i] += (sign - 1.0) * adv.numeric[k][i];
    double err = RelativeError(whole.analytic[k], expected);
    INFO(names[k] << " rel err " << err);
    CHECK(err <= 1e-4);
    worst = std::max(worst, err);
  }
  CHECK(worst <= 1e-4);

  // Without the adversarial term the objective is an ordinary function.
  tc.loss.spkadv_lambda = 0.0;
  Trainer plain(tc, &model, &c);
  CHECK(GradCheck([&] { return plain.GeneratorObjective(in).total; }, params) <= 1e-4);
}

TEST_CASE("evaluation is read-only; code usage adds up") {
  TrainCorpus c = testing::ToyCorpus(3, 3, 16, 5, 8);
  HierarchicalVqvae model(testing::TinyModelConfig());
  TrainConfig tc = ToyTrainConfig(Variant::kBaseline);
  Trainer t(tc, &model, &c);
  uint64_t sum0 = model.generator_params().Checksum();
  DevResult d = t.Evaluate(c.dev);
  CHECK(model.generator_params().Checksum() == sum0);
  CHECK(d.reconstruction > 0.0);
  CHECK(d.objective >= d.reconstruction);
  CHECK_THROWS_AS(t.Evaluate({}), Error);
  for (int64_t s = 1; s <= 4; s++) t.TrainStep(s);
  int64_t total = 0;
  for (const auto &u : t.code_usage())
    for (int64_t n : u) total += n;
  CHECK(total == 4 * tc.batch_size * tc.segment_len * kNumStacks);
}

TEST_CASE("run writes log and checkpoints, deterministically") {
  testing::TempDir dir("trainer");
  TrainCorpus c = testing::ToyCorpus(3, 3, 16, 5, 9);
  auto run = [&](const std::string &sub) {
    HierarchicalVqvae model(testing::TinyModelConfig());
    Trainer t(ToyTrainConfig(Variant::kGan), &model, &c);
    return t.Run(dir.path() + "/" + sub, dir.path() + "/" + sub + ".csv");
  };
  TrainResult a = run("a"), b = run("b");
  CHECK(std::filesystem::exists(dir.path() + "/a/step000002.crkp"));
  CHECK(FileBytes(a.checkpoint_path) == FileBytes(b.checkpoint_path));
  CHECK(FileBytes(a.log_path) == FileBytes(b.log_path));
  CHECK(a.dev_history.size() == 3);  // initial, step 2, end

  std::ifstream is(a.log_path);
  std::string header;
  std::getline(is, header);
  CHECK(header == "step,loss_name,value");
  auto t = ReadCheckpoint(a.checkpoint_path);
  CHECK(FindTensor(t, "meta/steps")->data[0] == 3.0f);
  CHECK(FindTensor(t, "optim/gen/step") != nullptr);
  CHECK(FindTensor(t, "optim/disc/step") != nullptr);
}

TEST_CASE("non-finite losses stop training with the step named") {
  TrainCorpus c = testing::ToyCorpus(2, 2, 14, 5, 10);
  c.train[0].feats(0, 0) = std::nan("");
  c.train[1].feats(0, 0) = std::nan("");
  c.train[2].feats(0, 0) = std::nan("");
  c.train[3].feats(0, 0) = std::nan("");
  ModelConfig mc = testing::TinyModelConfig();
  mc.n_speakers = 2;
  HierarchicalVqvae model(mc);
  TrainConfig tc = ToyTrainConfig(Variant::kBaseline);
  tc.segment_len = 100;  // whole utterances, so the NaN frame is always in
  Trainer t(tc, &model, &c);
  try {
    t.TrainStep(7);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("step 7") != std::string::npos);
  }
}
