// tests/losses-test.cc

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

#include <cmath>

#include "autograd/grad-check.h"
#include "losses/adversarial-losses.h"
#include "losses/stft-loss.h"
#include "losses/vq-losses.h"
#include "test-util.h"

using namespace vqvc;
using namespace vqvc::ag;
using vqvc::testing::Backprop;
using vqvc::testing::RandomConst;
using vqvc::testing::RandomParam;

namespace {

Value Filled(const Shape &s, double v) {
  return Value::FromData(s, std::vector<double>(NumElements(s), v));
}

// VQ results whose inputs sit exactly on codebook rows.
std::array<VQResult, kNumStacks> OnCodebook(std::mt19937_64 &g) {
  std::array<VQResult, kNumStacks> vq;
  for (int s = 0; s < kNumStacks; s++) {
    std::vector<double> cb = testing::RandomVector(g, 4 * 3);
    std::vector<double> h;
    for (int t = 0; t < 5; t++) {
      int j = g() % 4;
      h.insert(h.end(), cb.begin() + j * 3, cb.begin() + j * 3 + 3);
    }
    vq[s] = Quantize(Value::Parameter({1, 5, 3}, h), Value::Parameter({4, 3}, cb));
  }
  return vq;
}

std::array<VQResult, kNumStacks> OffCodebook(std::mt19937_64 &g) {
  std::array<VQResult, kNumStacks> vq;
  for (int s = 0; s < kNumStacks; s++)
    vq[s] = Quantize(RandomParam(g, {1, 5, 3}), RandomParam(g, {4, 3}));
  return vq;
}

}  // namespace

TEST_CASE("objective vanishes at the fixpoint") {
  std::mt19937_64 g(1);
  Value x = RandomConst(g, {1, 5, 4});
  for (ReconKind k : {ReconKind::kL1, ReconKind::kL2}) {
    LossConfig lc;
    lc.recon_kind = k;
    VqObjective o = VqvaeObjective(x, x, OnCodebook(g), lc);
    CHECK(o.total.item() == 0.0);
  }
}

TEST_CASE("reconstruction arithmetic") {
  Value x = Value::FromData({2, 2}, {1, 0, 0, 1});
  Value z = Filled({2, 2}, 0.0);
  CHECK(ReconstructionLoss(x, z, ReconKind::kL2).item() == doctest::Approx(0.5));
  Value d = Value::FromData({2, 2}, {1, -1, 0, 0});
  CHECK(ReconstructionLoss(d, z, ReconKind::kL1).item() == doctest::Approx(0.5));
  CHECK(ReconstructionLoss(d, z, ReconKind::kL1PlusStft).item() == doctest::Approx(0.5));
  // Padding frames do not count.
  CHECK(ReconstructionLoss(x, z, ReconKind::kL2, {1, 0}).item() == doctest::Approx(0.5));
  CHECK(ReconstructionLoss(x, z, ReconKind::kL2, {0, 1}).item() == doctest::Approx(0.5));
  Value y = Value::FromData({2, 2}, {2, 2, 0, 0});
  CHECK(ReconstructionLoss(y, z, ReconKind::kL2, {1, 0}).item() == doctest::Approx(4.0));
}

TEST_CASE("commitment term is linear in beta") {
  std::mt19937_64 g(2);
  Value x = RandomConst(g, {1, 5, 4}), xh = RandomConst(g, {1, 5, 4});
  auto vq = OffCodebook(g);
  auto total = [&](double beta) {
    LossConfig lc;
    lc.beta = beta;
    return VqvaeObjective(x, xh, vq, lc);
  };
  VqObjective o0 = total(0.0), o1 = total(0.25), o2 = total(0.5), o3 = total(0.75);
  double c1 = o1.total.item() - o0.total.item();
  CHECK(o2.total.item() - o0.total.item() == doctest::Approx(2 * c1).epsilon(1e-12));
  CHECK(o3.total.item() - o0.total.item() == doctest::Approx(3 * c1).epsilon(1e-12));
  CHECK(c1 == doctest::Approx(0.25 * o1.commitment.item()).epsilon(1e-12));
  CHECK(o0.reconstruction.item() == o2.reconstruction.item());
  CHECK(o0.codebook.item() == o2.codebook.item());
  double sum_cb = 0.0;
  for (const auto &r : vq) sum_cb += r.codebook_loss.item();
  CHECK(o1.codebook.item() == doctest::Approx(sum_cb).epsilon(1e-12));
}

TEST_CASE("straight-through: the reconstruction gradient reaches h as if it were q") {
  std::mt19937_64 g(3);
  Value h = RandomParam(g, {1, 6, 3});
  Value cb = RandomParam(g, {5, 3});
  Value x = RandomConst(g, {1, 6, 3});
  // Gradient with respect to h through st ...
  Backprop([&] { return ReconstructionLoss(x, Quantize(h, cb).st, ReconKind::kL2); }, {h, cb});
  std::vector<double> gh = h.grad();
  for (double v : cb.grad()) CHECK(v == 0.0);
  // ... equals the gradient with respect to q treated as a free variable.
  VQResult r = Quantize(h, cb);
  Value qfree = Value::Parameter(r.q.shape(), r.q.data());
  Backprop([&] { return ReconstructionLoss(x, qfree, ReconKind::kL2); });
  CHECK(gh == qfree.grad());
}

TEST_CASE("lsgan values") {
  Shape s = {2, 3, 1};
  CHECK(LsganDiscriminatorLoss(Filled(s, 1.0), Filled(s, 0.0)).item() == 0.0);
  CHECK(LsganGeneratorLoss(Filled(s, 1.0)).item() == 0.0);
  CHECK(LsganDiscriminatorLoss(Filled(s, 0.5), Filled(s, 0.5)).item() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(LsganGeneratorLoss(Filled(s, 0.5)).item() == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("auxiliary classifier loss") {
  Value uniform = Filled({3, 4}, 0.7);
  CHECK(AcGanLoss(uniform, {0, 1, 3}).item() == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  Value sure = Value::FromData({1, 4}, {0, 0, 100, 0});
  CHECK(AcGanLoss(sure, {2}).item() < 1e-6);
  CHECK_THROWS_AS(AcGanLoss(uniform, {0, 1, 4}), Error);
  CHECK_THROWS_AS(AcGanLoss(uniform, {0, 1}), Error);
}

TEST_CASE("speaker adversarial loss and the reversal layer") {
  HierarchicalVqvae model(testing::TinyModelConfig(3));
  std::mt19937_64 g(4);
  Value x = RandomConst(g, {2, 9, model.config().feat_dim});
  std::vector<int> spk = {0, 2};
  std::vector<Value> enc, clf, all;
  for (const auto &[n, v] : model.generator_params().entries()) {
    if (n.rfind("enc/", 0) == 0) enc.push_back(v);
    if (n.rfind("spkclf/", 0) == 0) clf.push_back(v);
    all.push_back(v);
  }
  auto flat = [](const std::vector<Value> &vs) {
    std::vector<double> out;
    for (const auto &v : vs) out.insert(out.end(), v.grad().begin(), v.grad().end());
    return out;
  };
  // Plain graph: no reversal layer at all.
  Backprop([&] {
    EncodeOutput e = model.Encode(x);
    Value h = Concat({e.h[kBottom], e.h[kMiddle], e.h[kTop]}, -1);
    return AcGanLoss(model.speaker_classifier().Forward(h, Value()).speaker_logits, spk);
  }, all);
  std::vector<double> plain_enc = flat(enc), plain_clf = flat(clf);
  for (double lambda : {0.0, 0.1, 1.0}) {
    Backprop([&] { return SpeakerAdversarialLoss(model, model.Encode(x), spk, lambda); }, all);
    std::vector<double> ge = flat(enc), gc = flat(clf);
    for (size_t i = 0; i < ge.size(); i++) CHECK(std::abs(ge[i] + lambda * plain_enc[i]) <= 1e-6);
    CHECK(gc == plain_clf);
    if (lambda == 0.0) for (double v : ge) CHECK(v == 0.0);
  }
}

TEST_CASE("multiresolution stft loss") {
  std::mt19937_64 g(5);
  std::vector<double> pos = testing::RandomVector(g, 64 * 2);
  for (auto &v : pos) v = std::abs(v) + 0.1;
  Value x = Value::FromData({1, 64, 2}, pos);
  std::vector<StftResolution> res = {{16, 4, 8}, {32, 8, 16}, {64, 16, 32}};
  CHECK(MultiResStftLoss(x, x, res).item() == 0.0);
  std::vector<StftLossTerms> terms;
  MultiResStftLoss(x, Scale(x, 2.0), res, &terms);
  REQUIRE(terms.size() == 3);
  for (const auto &t : terms) {
    CHECK(t.computed);
    CHECK(t.spectral_convergence.item() == doctest::Approx(1.0).epsilon(1e-9));
    // The magnitude floor can only shrink the log gap.
    CHECK(t.log_magnitude.item() <= std::log(2.0) + 1e-9);
    CHECK(t.log_magnitude.item() > 0.5 * std::log(2.0));
  }
  // Too long for the sequence: skipped.
  std::vector<StftResolution> longer = {{16, 4, 8}, {128, 32, 128}};
  MultiResStftLoss(x, Scale(x, 2.0), longer, &terms);
  CHECK(terms[0].computed);
  CHECK_FALSE(terms[1].computed);
  CHECK(MultiResStftLoss(x, Scale(x, 2.0), {{128, 32, 128}}).item() == 0.0);
  CHECK(MaxStftWindow(DefaultStftResolutions()) == 128);
}

TEST_CASE("losses are non-negative on random inputs") {
  for (uint64_t seed = 0; seed < 10; seed++) {
    std::mt19937_64 g(seed);
    Value a = RandomConst(g, {2, 70, 3}), b = RandomConst(g, {2, 70, 3});
    auto vq = OffCodebook(g);
    LossConfig lc;
    lc.recon_kind = ReconKind::kL1PlusStft;
    VqObjective o = VqvaeObjective(a, b, vq, lc);
    CHECK(o.total.item() >= 0.0);
    CHECK(o.stft.item() >= 0.0);
    CHECK(o.total.item() == doctest::Approx(o.reconstruction.item() + o.codebook.item() +
                                            lc.beta * o.commitment.item() +
                                            lc.stft_weight * o.stft.item()).epsilon(1e-12));
    CHECK(LsganDiscriminatorLoss(a, b).item() >= 0.0);
    CHECK(LsganGeneratorLoss(b).item() >= 0.0);
  }
}

TEST_CASE("loss configuration") {
  CHECK(ParseReconKind("l1") == ReconKind::kL1);
  CHECK(ParseReconKind("l2") == ReconKind::kL2);
  CHECK(ParseReconKind("l1_plus_stft") == ReconKind::kL1PlusStft);
  CHECK(ReconKindName(ReconKind::kL1PlusStft) == "l1_plus_stft");
  CHECK(ParseAdvTarget("reconstructed") == AdvTarget::kReconstructed);
  CHECK(AdvTargetName(AdvTarget::kConverted) == "converted");
  CHECK_THROWS_AS(ParseReconKind("l3"), ConfigError);
  CHECK_THROWS_AS(ParseAdvTarget("both"), ConfigError);
  LossConfig lc;
  CHECK_NOTHROW(lc.Check());
  lc.beta = -1;
  CHECK_THROWS_AS(lc.Check(), ConfigError);
  LossReport r = LossReport::Empty();
  for (const auto &n : kLossNames) CHECK(r.values.count(n) == 1);
}
