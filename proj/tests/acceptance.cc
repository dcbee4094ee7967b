// tests/acceptance.cc

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

// Runs every acceptance check and prints one PASS/FAIL line per criterion.
// Criteria 6, 7, 8 and 10 share one full `vqvc run` of the default recipe.
//
// usage: acceptance <path-to-vqvc> [scratch-dir]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <regex>
#include <sstream>

#include "autograd/grad-check.h"
#include "evaluation/dtw.h"
#include "evaluation/evaluate-conversion.h"
#include "evaluation/mcd.h"
#include "grad-suite.h"
#include "losses/adversarial-losses.h"
#include "losses/vq-losses.h"
#include "pipeline/recipe-config.h"
#include "pipeline/recipe.h"
#include "signal/feature-io.h"
#include "signal/pitch.h"
#include "signal/stft.h"
#include "signal/wave-io.h"
#include "test-util.h"
#include "trainer/trainer.h"
#include "vqmodel/conversion.h"
#include "vqmodel/quantizer.h"

using namespace vqvc;
using namespace vqvc::ag;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  // Records a failed condition; the first message wins the detail.
  void Need(bool ok, const std::string &what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string Slurp(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string g_cli;

int RunCli(const std::string &args, const std::string &log) {
  std::string cmd = ShellQuote(g_cli) + " " + args + " > " + ShellQuote(log) + " 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::vector<double> Flat(const std::vector<Value> &vs) {
  std::vector<double> out;
  for (const auto &v : vs) out.insert(out.end(), v.grad().begin(), v.grad().end());
  return out;
}

std::vector<std::vector<double>> Snapshot(const ParameterStore &s) {
  std::vector<std::vector<double>> out;
  for (const auto &[n, v] : s.entries()) out.push_back(v.data());
  return out;
}

// ---------------------------------------------------------------------------
// Shared state of the full recipe run.

struct FullRun {
  std::string dir, config, log, rerun_log;
  int exit_code = -1, rerun_exit_code = -1;
  double seconds = 0.0;
  std::string error;  // set when the run could not even be started
};

FullRun RunFullRecipe(const std::string &root) {
  FullRun r;
  r.dir = root + "/recipe";
  fs::remove_all(r.dir);
  fs::create_directories(r.dir);
  r.config = r.dir + "/recipe.toml";
  r.log = r.dir + "/run.log";
  r.rerun_log = r.dir + "/rerun.log";
  if (RunCli("init " + ShellQuote(r.dir), r.dir + "/init.log") != 0) {
    r.error = "vqvc init failed";
    return r;
  }
  auto t0 = Clock::now();
  r.exit_code = RunCli("run --config " + ShellQuote(r.config), r.log);
  r.seconds = Seconds(t0);
  r.rerun_exit_code = RunCli("run --config " + ShellQuote(r.config), r.rerun_log);
  return r;
}

void NeedRun(const FullRun &run, Outcome *o) {
  o->Need(run.error.empty(), run.error);
  o->Need(run.exit_code == 0, "vqvc run exited with " + std::to_string(run.exit_code));
  if (!o->pass) throw Error(o->detail);
}

UtteranceFeatures LoadFeatures(const WorkLayout &w, const std::string &id) {
  UtteranceFeatures u;
  u.log_mel = ReadFeatures(w.MelPath(id));
  u.f0 = FeaturesToF0(ReadFeatures(w.F0Path(id)));
  return u;
}

// ---------------------------------------------------------------------------

Outcome GradientCriterion() {
  Outcome o;
  auto t0 = Clock::now();
  int n = 0;
  double worst_ratio = 0.0;
  for (const auto &c : testing::GradientSuite()) {
    for (uint64_t seed = 0; seed < testing::kGradSeeds; seed++) {
      double err = c.run(seed);
      n++;
      worst_ratio = std::max(worst_ratio, err / c.tolerance);
      o.Need(std::isfinite(err) && err <= c.tolerance,
             fmt::format("{} seed {}: rel err {:.3g} > {:.0e}", c.name, seed, err, c.tolerance));
    }
  }
  double sec = Seconds(t0);
  o.Need(sec < 60.0, fmt::format("suite took {:.1f} s", sec));
  if (o.pass)
    o.detail = fmt::format("{} checks, worst err/tol {:.3g}, {:.1f} s", n, worst_ratio, sec);
  return o;
}

Outcome QuantizerCriterion() {
  Outcome o;
  const int T = 32, K = 64, D = 16;
  int ties = 0;
  for (uint64_t seed = 0; seed < 100; seed++) {
    std::mt19937_64 g(1000 + seed);
    std::vector<double> cb = testing::RandomVector(g, K * D);
    for (int j = 0; j < 8; j++) {
      int src = g() % K, dst = g() % K;
      std::copy(cb.begin() + src * D, cb.begin() + (src + 1) * D, cb.begin() + dst * D);
    }
    std::vector<double> h = testing::RandomVector(g, T * D);
    for (int t = 0; t < 4; t++) {
      int j = g() % K;
      std::copy(cb.begin() + j * D, cb.begin() + (j + 1) * D, h.begin() + t * D);
    }
    std::vector<int> oracle(T);
    for (int t = 0; t < T; t++) {
      std::vector<double> dist(K, 0.0);
      for (int j = 0; j < K; j++)
        for (int d = 0; d < D; d++) {
          double diff = h[t * D + d] - cb[j * D + d];
          dist[j] += diff * diff;
        }
      double best = *std::min_element(dist.begin(), dist.end());
      oracle[t] = int(std::find(dist.begin(), dist.end(), best) - dist.begin());
      ties += std::count(dist.begin(), dist.end(), best) > 1;
    }
    VQResult r = Quantize(Value::FromData({1, T, D}, h), Value::FromData({K, D}, cb));
    o.Need(r.indices == oracle, fmt::format("instance {} differs", seed));
    o.Need(NearestCodes(h, T, cb, K, D) == oracle, fmt::format("instance {} differs", seed));
  }
  if (o.pass) o.detail = fmt::format("100 instances, {} tied frames", ties);
  return o;
}

Outcome ObjectiveCriterion() {
  Outcome o;
  std::mt19937_64 g(7);
  // Zero at the fixpoint.
  {
    std::array<VQResult, kNumStacks> vq;
    for (int s = 0; s < kNumStacks; s++) {
      std::vector<double> cb = testing::RandomVector(g, 4 * 3), h;
      for (int t = 0; t < 5; t++) {
        int j = g() % 4;
        h.insert(h.end(), cb.begin() + j * 3, cb.begin() + j * 3 + 3);
      }
      vq[s] = Quantize(Value::Parameter({1, 5, 3}, h), Value::Parameter({4, 3}, cb));
    }
    Value x = testing::RandomConst(g, {1, 5, 4});
    for (ReconKind k : {ReconKind::kL1, ReconKind::kL2}) {
      LossConfig lc;
      lc.recon_kind = k;
      o.Need(VqvaeObjective(x, x, vq, lc).total.item() == 0.0, "objective at fixpoint != 0");
    }
  }
  // Linear in beta.
  {
    std::array<VQResult, kNumStacks> vq;
    for (int s = 0; s < kNumStacks; s++)
      vq[s] = Quantize(testing::RandomParam(g, {1, 5, 3}), testing::RandomParam(g, {4, 3}));
    Value x = testing::RandomConst(g, {1, 5, 4}), xh = testing::RandomConst(g, {1, 5, 4});
    auto total = [&](double beta) {
      LossConfig lc;
      lc.beta = beta;
      return VqvaeObjective(x, xh, vq, lc);
    };
    double t0 = total(0.0).total.item();
    VqObjective o1 = total(1.0);
    double slope = o1.total.item() - t0;
    o.Need(std::abs(slope - o1.commitment.item()) <= 1e-12, "slope != commitment");
    for (double beta : {0.25, 0.5, 2.0}) {
      double got = total(beta).total.item() - t0;
      o.Need(std::abs(got - beta * slope) <= 1e-12 * std::max(1.0, std::abs(got)),
             fmt::format("commitment not linear at beta {}", beta));
    }
  }
  // Straight-through: dL/dh equals dL/dq with q free.
  {
    Value h = testing::RandomParam(g, {1, 6, 3}), cb = testing::RandomParam(g, {5, 3});
    Value x = testing::RandomConst(g, {1, 6, 3});
    testing::Backprop([&] { return ReconstructionLoss(x, Quantize(h, cb).st, ReconKind::kL2); },
                      {h, cb});
    std::vector<double> gh = h.grad(), gcb = cb.grad();
    VQResult r = Quantize(h, cb);
    Value qfree = Value::Parameter(r.q.shape(), r.q.data());
    testing::Backprop([&] { return ReconstructionLoss(x, qfree, ReconKind::kL2); });
    o.Need(gh == qfree.grad(), "reconstruction gradient at h != at q");
    o.Need(std::all_of(gcb.begin(), gcb.end(), [](double v) { return v == 0.0; }),
           "codebook gets reconstruction gradient");
    testing::Backprop([&] { return Quantize(h, cb).commitment_loss; }, {h, cb});
    gcb = cb.grad();
    o.Need(std::all_of(gcb.begin(), gcb.end(), [](double v) { return v == 0.0; }),
           "codebook gets commitment gradient");
    testing::Backprop([&] { return Quantize(h, cb).codebook_loss; }, {h, cb});
    gh = h.grad();
    gcb = cb.grad();
    o.Need(std::all_of(gh.begin(), gh.end(), [](double v) { return v == 0.0; }),
           "encoder output gets codebook-term gradient");
    o.Need(std::any_of(gcb.begin(), gcb.end(), [](double v) { return v != 0.0; }),
           "codebook term gives no codebook gradient");
  }
  return o;
}

Outcome ReversalCriterion() {
  Outcome o;
  HierarchicalVqvae model(testing::TinyModelConfig(3));
  std::mt19937_64 g(4);
  Value x = testing::RandomConst(g, {2, 9, model.config().feat_dim});
  std::vector<int> spk = {0, 2};
  std::vector<Value> enc, all;
  for (const auto &[n, v] : model.generator_params().entries()) {
    if (n.rfind("enc/", 0) == 0) enc.push_back(v);
    all.push_back(v);
  }
  testing::Backprop([&] {
    EncodeOutput e = model.Encode(x);
    Value h = Concat({e.h[kBottom], e.h[kMiddle], e.h[kTop]}, -1);
    return AcGanLoss(model.speaker_classifier().Forward(h, Value()).speaker_logits, spk);
  }, all);
  std::vector<double> plain = Flat(enc);
  double worst = 0.0;
  for (double lambda : {0.0, 0.1, 1.0}) {
    testing::Backprop([&] { return SpeakerAdversarialLoss(model, model.Encode(x), spk, lambda); },
                      all);
    std::vector<double> ge = Flat(enc);
    for (size_t i = 0; i < ge.size(); i++) worst = std::max(worst, std::abs(ge[i] + lambda * plain[i]));
  }
  o.Need(worst <= 1e-6, fmt::format("max |g + lambda g_plain| = {:.3g}", worst));
  if (o.pass) o.detail = fmt::format("max deviation {:.3g}", worst);
  return o;
}

Outcome LsganCriterion() {
  Outcome o;
  auto filled = [](double v) { return Value::FromData({2, 3, 1}, std::vector<double>(6, v)); };
  o.Need(LsganDiscriminatorLoss(filled(1.0), filled(0.0)).item() == 0.0, "d(1,0) != 0");
  o.Need(LsganGeneratorLoss(filled(1.0)).item() == 0.0, "g(1) != 0");
  o.Need(std::abs(LsganDiscriminatorLoss(filled(0.5), filled(0.5)).item() - 0.25) < 1e-15,
         "d(0.5,0.5) != 0.25");
  o.Need(std::abs(LsganGeneratorLoss(filled(0.5)).item() - 0.125) < 1e-15, "g(0.5) != 0.125");

  TrainCorpus c = testing::ToyCorpus(3, 3, 16, 5, 6);
  HierarchicalVqvae model(testing::TinyModelConfig());
  TrainConfig tc;
  tc.variant = Variant::kCycleGan;
  tc.batch_size = 2;
  tc.segment_len = 12;
  Trainer t(tc, &model, &c);
  for (int64_t step = 1; step <= 3; step++) {
    StepInputs in = t.SampleStep(step);
    auto gen0 = Snapshot(model.generator_params()), disc0 = Snapshot(model.discriminator_params());
    GeneratorPass gp = t.GeneratorStep(in, step);
    auto gen1 = Snapshot(model.generator_params());
    o.Need(Snapshot(model.discriminator_params()) == disc0, "G step moved D");
    o.Need(gen1 != gen0, "G step did not move G");
    t.DiscriminatorStep(in, &gp, step);
    o.Need(Snapshot(model.generator_params()) == gen1, "D step moved G");
    o.Need(Snapshot(model.discriminator_params()) != disc0, "D step did not move D");
  }
  return o;
}

Outcome BaselineCriterion(const FullRun &run) {
  Outcome o;
  NeedRun(run, &o);
  RecipeConfig cfg = ReadRecipeConfig(run.config);
  o.Need(cfg.train.variant == Variant::kBaseline, "recipe variant is not baseline");
  o.Need(cfg.train.steps <= 2000, "more than 2000 steps");
  WorkLayout w(cfg.WorkDir());
  PreparedCorpus pc = LoadPrepared(cfg);
  o.Need(pc.speakers.size() == 4, "corpus does not have 4 speakers");

  // Wall time of the train stage as the CLI reported it.
  std::regex done("stage train: done \\(([0-9.]+) s\\)");
  std::smatch m;
  std::string log = Slurp(run.log);
  double train_s = std::numeric_limits<double>::infinity();
  if (std::regex_search(log, m, done)) train_s = std::stod(m[1]);
  o.Need(train_s < 600.0, fmt::format("training took {} s", train_s));

  auto stats = ReadSpeakerStats(w.StatsPath());
  TrainCorpus corpus;
  corpus.n_speakers = int(pc.speakers.size());
  for (const auto &id : pc.split.train) corpus.train.push_back(LoadTrainUtterance(w, pc, stats, id));
  corpus.Index();
  auto model = LoadTrainedModel(w.ModelPath());
  Trainer t(cfg.train, model.get(), &corpus);
  double train_recon = t.Evaluate(corpus.train).reconstruction;
  o.Need(train_recon < 0.05, fmt::format("training reconstruction {:.4f}", train_recon));

  std::ifstream is(w.TrainLog());
  std::string line;
  std::vector<double> dev;
  while (std::getline(is, line)) {
    auto a = line.find(','), b = line.rfind(',');
    if (a != std::string::npos && line.substr(a + 1, b - a - 1) == "dev_reconstruction")
      dev.push_back(std::stod(line.substr(b + 1)));
  }
  o.Need(dev.size() >= 2, "no dev history in the training log");
  if (dev.size() >= 2)
    o.Need(dev.back() < dev.front(),
           fmt::format("dev loss {:.4f} -> {:.4f}", dev.front(), dev.back()));
  if (o.pass)
    o.detail = fmt::format("train recon {:.4f} after {} steps in {:.0f} s, dev {:.4f} -> {:.4f}",
                           train_recon, cfg.train.steps, train_s, dev.front(), dev.back());
  return o;
}

Outcome ConversionCriterion(const FullRun &run) {
  Outcome o;
  NeedRun(run, &o);
  RecipeConfig cfg = ReadRecipeConfig(run.config);
  WorkLayout w(cfg.WorkDir());
  PreparedCorpus pc = LoadPrepared(cfg);
  auto stats = ReadSpeakerStats(w.StatsPath());
  auto model = LoadTrainedModel(w.ModelPath());
  double delta_sum = 0.0;
  int64_t delta_n = 0;
  for (const auto &id : pc.split.eval) {
    UtteranceFeatures u = LoadFeatures(w, id);
    const std::string &src = pc.Get(id).speaker;
    const SpeakerStats &ss = stats.at(src);
    ConversionResult self = ConvertUtterance(*model, u, ss, ss);

    // Reconstruction through the model's own forward pass.
    const int T = u.log_mel.NumFrames(), D = u.log_mel.Dim();
    RowMatrix xn = NormalizeFeatures(u.log_mel.data, ss);
    ContinuousF0 cf = ContinuousLogF0(u.f0, ss);
    Value xv = Value::FromData({1, T, D}, std::vector<double>(xn.data(), xn.data() + xn.size()));
    HierarchicalOutput rec =
        model->Forward(xv, model->MakeAux(cf.lcf0, cf.uv, {ss.speaker_index}, 1, T));
    RowMatrix y(T, D);
    std::copy(rec.x_hat.data().begin(), rec.x_hat.data().end(), y.data());
    o.Need(self.converted.data == DenormalizeFeatures(y, ss),
           id + ": self-conversion differs from reconstruction");

    for (const auto &tgt : pc.speakers) {
      if (tgt == src) continue;
      ConversionResult cross = ConvertUtterance(*model, u, ss, stats.at(tgt));
      o.Need(cross.indices == self.indices, id + ": indices depend on the target");
      delta_sum += (cross.converted.data - self.converted.data).cwiseAbs().sum();
      delta_n += cross.converted.data.size();
    }
  }
  double mean_delta = delta_n ? delta_sum / delta_n : 0.0;
  o.Need(mean_delta > 0.0, "cross-conversion equals self-conversion");
  if (o.pass)
    o.detail = fmt::format("{} utterances, mean |cross - self| {:.4f}", pc.split.eval.size(),
                           mean_delta);
  return o;
}

Outcome EvaluationCriterion(const FullRun &run) {
  Outcome o;
  auto cep = [](const RowMatrix &m) {
    FeatureSeq f;
    f.kind = FeatureKind::kMelCepstrum;
    f.data = m;
    return f;
  };
  std::mt19937_64 g(11);
  RowMatrix a = RowMatrix::NullaryExpr(8, 35, [&]() { return std::normal_distribution<>()(g); });
  o.Need(MelCepstralDistortion(cep(a), cep(a)) == 0.0, "MCD of identical sequences != 0");
  RowMatrix z = RowMatrix::Zero(4, 35), z1 = z;
  z1.col(1).setOnes();
  double unit = MelCepstralDistortion(cep(z), cep(z1));
  o.Need(std::abs(unit - 6.1421) <= 1e-3, fmt::format("delta c1 = 1 gives {:.5f} dB", unit));

  for (int inst = 0; inst < 50; inst++) {
    int n = 1 + g() % 6, m = 1 + g() % 6;
    RowMatrix x = RowMatrix::NullaryExpr(n, 3, [&]() { return std::normal_distribution<>()(g); });
    RowMatrix y = RowMatrix::NullaryExpr(m, 3, [&]() { return std::normal_distribution<>()(g); });
    double best = std::numeric_limits<double>::infinity();
    std::function<void(int, int, double)> walk = [&](int i, int j, double acc) {
      acc += (x.row(i) - y.row(j)).squaredNorm();
      if (i == n - 1 && j == m - 1) {
        best = std::min(best, acc);
        return;
      }
      if (i + 1 < n) walk(i + 1, j, acc);
      if (j + 1 < m) walk(i, j + 1, acc);
      if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1, acc);
    };
    walk(0, 0, 0.0);
    DtwPath p = Dtw(x, y);
    o.Need(IsValidDtwPath(p, n, m), fmt::format("instance {}: invalid path", inst));
    o.Need(std::abs(p.cost - best) <= 1e-12 * std::max(1.0, best),
           fmt::format("instance {}: dtw {} vs brute force {}", inst, p.cost, best));
  }

  NeedRun(run, &o);
  RecipeConfig cfg = ReadRecipeConfig(run.config);
  WorkLayout w(cfg.WorkDir());
  double trained = ReadMcdReport(w.McdReportPath()).corpus_mean;
  double untrained = ReadMcdReport(w.UntrainedMcdReportPath()).corpus_mean;
  o.Need(trained < untrained,
         fmt::format("trained MCD {:.3f} dB >= untrained {:.3f} dB", trained, untrained));
  if (o.pass)
    o.detail = fmt::format("unit delta {:.5f} dB, corpus MCD trained {:.3f} vs untrained {:.3f} dB",
                           unit, trained, untrained);
  return o;
}

Outcome DspCriterion(const FullRun &run, const std::string &scratch) {
  Outcome o;
  StftOptions so;
  so.fft_size = so.win_size = 512;
  so.hop_size = 128;
  Waveform noise = testing::Noise(0.5, 9001, 3);
  Waveform back = InverseStft(ComputeStft(noise, so), noise.samples.size(), noise.sample_rate_hz);
  double rt = testing::MaxAbsDiff(back.samples, noise.samples);
  o.Need(back.samples.size() == noise.samples.size() && rt <= 1e-6,
         fmt::format("stft round trip error {:.3g}", rt));

  StftOptions def;
  Waveform sine = testing::Sine(440.0, 0.5, 22050);
  Spectrogram s = ComputeMagnitudeSpectrogram(sine, def);
  GriffinLimOptions gl;
  gl.n_iters = 60;
  GriffinLimResult r = GriffinLim(s, gl, sine.sample_rate_hz, sine.samples.size());
  double sc = SpectralConvergence(ComputeMagnitudeSpectrogram(r.wav, def).magnitude, s.magnitude);
  o.Need(sc < 0.1, fmt::format("griffin-lim SC {:.4f}", sc));

  double worst_f0 = 0.0;
  for (double hz : {100.0, 150.0, 220.0, 300.0}) {
    F0Contour c = ExtractF0(testing::Harmonic(hz, 16000), F0Options(), def);
    std::vector<double> v;
    for (int t = 0; t < c.NumFrames(); t++)
      if (c.voiced[t]) v.push_back(c.f0_hz[t]);
    double rel = v.empty() ? 1.0 : std::abs(testing::Median(v) - hz) / hz;
    worst_f0 = std::max(worst_f0, rel);
  }
  o.Need(worst_f0 <= 0.05, fmt::format("f0 median off by {:.1f}%", 100 * worst_f0));

  // Features: extraction twice from the same file.
  NeedRun(run, &o);
  RecipeConfig cfg = ReadRecipeConfig(run.config);
  WorkLayout w(cfg.WorkDir());
  PreparedCorpus pc = LoadPrepared(cfg);
  const std::string &id = pc.split.train.front();
  Waveform wav = ReadWave(cfg.CorpusDir() + "/" + pc.Get(id).wav_path);
  UtteranceFeatures f1 = ExtractUtteranceFeatures(wav, cfg), f2 = ExtractUtteranceFeatures(wav, cfg);
  o.Need(f1.log_mel.data == f2.log_mel.data && f1.f0.f0_hz == f2.f0.f0_hz,
         "feature extraction is not repeatable");
  std::stringstream b1;
  WriteFeatures(f1.log_mel, b1);
  o.Need(b1.str() == Slurp(w.MelPath(id)), "features differ from the recipe's copy");

  // Checkpoints: two identical short runs.
  TrainCorpus c = testing::ToyCorpus(3, 3, 16, 5, 9);
  std::vector<std::string> ckpt, logs;
  for (int k = 0; k < 2; k++) {
    HierarchicalVqvae model(testing::TinyModelConfig());
    TrainConfig tc;
    tc.variant = Variant::kCycleGan;
    tc.steps = 4;
    tc.batch_size = 2;
    tc.segment_len = 12;
    tc.checkpoint_every = 2;
    Trainer t(tc, &model, &c);
    std::string sub = scratch + "/det" + std::to_string(k);
    TrainResult res = t.Run(sub, sub + ".csv");
    ckpt.push_back(Slurp(res.checkpoint_path));
    logs.push_back(Slurp(res.log_path));
  }
  o.Need(ckpt[0] == ckpt[1] && logs[0] == logs[1], "checkpoints differ between identical runs");

  // Reports: re-evaluate the full run.
  std::string mcd0 = Slurp(w.McdReportPath()), base0 = Slurp(w.UntrainedMcdReportPath());
  int rc = RunCli("evaluate --config " + ShellQuote(run.config), scratch + "/evaluate.log");
  o.Need(rc == 0, "vqvc evaluate failed");
  o.Need(Slurp(w.McdReportPath()) == mcd0 && Slurp(w.UntrainedMcdReportPath()) == base0,
         "reports differ after re-evaluation");
  if (o.pass)
    o.detail = fmt::format("round trip {:.2g}, GL SC {:.4f}, worst f0 {:.2f}%", rt, sc,
                           100 * worst_f0);
  return o;
}

Outcome RecipeCriterion(const FullRun &run) {
  Outcome o;
  NeedRun(run, &o);
  o.Need(run.seconds < 900.0, fmt::format("run took {:.0f} s", run.seconds));
  std::string log = Slurp(run.log);
  for (const char *name : kStageNames)
    o.Need(log.find(fmt::format("stage {}: done", name)) != std::string::npos,
           fmt::format("stage {} did not run", name));

  RecipeConfig cfg = ReadRecipeConfig(run.config);
  WorkLayout w(cfg.WorkDir());
  PreparedCorpus pc = LoadPrepared(cfg);
  std::vector<EvalPairSpec> pairs = MakeEvalPairs(pc);
  int wavs = 0;
  for (const auto &p : pairs) {
    std::string path = w.ConvertedBase(p.source_spk, p.target_spk, p.source_utt) + ".wav";
    if (!fs::exists(path)) continue;
    Waveform cw = ReadWave(path);
    if (cw.sample_rate_hz == cfg.features.sample_rate_hz && !cw.samples.empty()) wavs++;
  }
  o.Need(!pairs.empty() && wavs == int(pairs.size()),
         fmt::format("{} of {} converted wavs", wavs, pairs.size()));
  McdReport rep = ReadMcdReport(w.McdReportPath());
  o.Need(rep.rows.size() == pairs.size(), "report row count");
  o.Need(std::isfinite(rep.corpus_mean) && rep.corpus_mean > 0.0, "report mean");

  o.Need(run.rerun_exit_code == 0, "re-run failed");
  std::string again = Slurp(run.rerun_log);
  for (const char *name : kStageNames)
    o.Need(again.find(fmt::format("stage {}: skipped (up to date)", name)) != std::string::npos,
           fmt::format("re-run did not skip {}", name));
  o.Need(again.find("running") == std::string::npos, "re-run ran a stage");
  if (o.pass)
    o.detail = fmt::format("{:.0f} s, {} converted wavs, corpus MCD {:.3f} dB, re-run skipped all",
                           run.seconds, wavs, rep.corpus_mean);
  return o;
}

}  // namespace

int main(int argc, char **argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-vqvc> [scratch-dir]\n";
    return 2;
  }
  g_cli = fs::absolute(argv[1]).string();
  std::string scratch = argc > 2 ? std::string(argv[2])
                                 : (fs::temp_directory_path() / "vqvc_acceptance").string();
  fs::create_directories(scratch);
  scratch = fs::absolute(scratch).string();
  spdlog::set_level(spdlog::level::warn);

  FullRun run;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"gradient suite", GradientCriterion},
      {"quantizer vs exhaustive search", QuantizerCriterion},
      {"objective structure", ObjectiveCriterion},
      {"gradient reversal", ReversalCriterion},
      {"lsgan values and update isolation", LsganCriterion},
      {"baseline training", [&] { return BaselineCriterion(run); }},
      {"conversion", [&] { return ConversionCriterion(run); }},
      {"evaluation", [&] { return EvaluationCriterion(run); }},
      {"dsp and determinism", [&] { return DspCriterion(run, scratch); }},
      {"recipe run", [&] { return RecipeCriterion(run); }},
  };

  std::cout << "running the default recipe in " << scratch << "/recipe ..." << std::endl;
  run = RunFullRecipe(scratch);
  std::cout << fmt::format("recipe run: exit {} in {:.0f} s", run.exit_code, run.seconds)
            << std::endl;

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); i++) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o.pass = false;
      if (o.detail.empty()) o.detail = e.what();
    }
    failed += !o.pass;
    std::cout << fmt::format("{} {:2d} {} ({:.1f} s){}{}", o.pass ? "PASS" : "FAIL", i + 1,
                             criteria[i].first, Seconds(t0), o.detail.empty() ? "" : ": ",
                             o.detail)
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
