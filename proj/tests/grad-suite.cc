// tests/grad-suite.cc

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

#include "grad-suite.h"

#include <cmath>
#include <random>

#include "autograd/grad-check.h"
#include "autograd/ops.h"
#include "losses/adversarial-losses.h"
#include "losses/stft-loss.h"
#include "losses/vq-losses.h"
#include "test-util.h"

namespace vqvc {
namespace testing {

using namespace ag;

namespace {

// Keeps inputs of kinked functions (abs, relu) away from the kink.
Value AwayFromZero(std::mt19937_64 &g, const Shape &s) {
  std::vector<double> v = RandomVector(g, NumElements(s));
  for (auto &x : v)
    if (std::abs(x) < 0.05) x = x < 0 ? -0.5 : 0.5;
  return Value::Parameter(s, v);
}

Value Positive(std::mt19937_64 &g, const Shape &s) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::vector<double> v(NumElements(s));
  for (auto &x : v) x = u(g);
  return Value::Parameter(s, v);
}

using Unary = std::function<Value(const Value &)>;

GradCase UnaryCase(const std::string &name, Unary op, bool positive = false,
                   bool kinked = false) {
  return {name, 1e-4, [=](uint64_t seed) {
            std::mt19937_64 g(seed);
            Value a = positive ? Positive(g, {3, 4})
                      : kinked ? AwayFromZero(g, {3, 4})
                               : RandomParam(g, {3, 4});
            // A random linear read-out so every element matters differently.
            Value w = RandomConst(g, {3, 4});
            return GradCheck([&] { return Sum(Mul(op(a), w)); }, {a});
          }};
}

using BinaryOp = std::function<Value(const Value &, const Value &)>;

GradCase BinaryCase(const std::string &name, BinaryOp op, const Shape &b_shape,
                    bool positive_b = false) {
  return {name, 1e-4, [=](uint64_t seed) {
            std::mt19937_64 g(seed);
            Value a = RandomParam(g, {3, 4});
            Value b = positive_b ? Positive(g, b_shape) : RandomParam(g, b_shape);
            Value w = RandomConst(g, {3, 4});
            return GradCheck([&] { return Sum(Mul(op(a, b), w)); }, {a, b});
          }};
}

struct ModelFixture {
  HierarchicalVqvae model;
  Value x, aux;
  std::vector<int> speakers;
  std::vector<Value> params;

  explicit ModelFixture(uint64_t seed, int batch = 2, int frames = 16)
      : model(TinyModelConfig(seed + 100)) {
    std::mt19937_64 g(seed);
    const ModelConfig &c = model.config();
    x = RandomConst(g, {batch, frames, c.feat_dim});
    std::vector<double> lcf0 = RandomVector(g, batch * frames), uv(batch * frames);
    for (auto &v : uv) v = g() % 2;
    for (int b = 0; b < batch; b++) speakers.push_back(static_cast<int>(g() % c.n_speakers));
    aux = model.MakeAux(lcf0, uv, speakers, batch, frames);
    ConditionForGradCheck(model, seed);
  }

  void TakeParams(const std::string &prefix) {
    for (const auto &[name, v] : model.generator_params().entries())
      if (name.rfind(prefix, 0) == 0) params.push_back(v);
  }
};

}  // namespace

std::vector<GradCase> GradientSuite() {
  std::vector<GradCase> s;
  s.push_back(BinaryCase("add", Add, {3, 4}));
  s.push_back(BinaryCase("add_bias_row", Add, {4}));
  s.push_back(BinaryCase("sub", Sub, {3, 4}));
  s.push_back(BinaryCase("mul", Mul, {3, 4}));
  s.push_back(BinaryCase("mul_scalar_broadcast", Mul, {1}));
  s.push_back(BinaryCase("div", Div, {3, 4}, true));
  s.push_back(UnaryCase("scale", [](const Value &a) { return Scale(a, -1.7); }));
  s.push_back(UnaryCase("add_scalar", [](const Value &a) { return AddScalar(a, 0.3); }));
  s.push_back(UnaryCase("square", Square));
  s.push_back(UnaryCase("abs", Abs, false, true));
  s.push_back(UnaryCase("exp", Exp));
  s.push_back(UnaryCase("log", Log, true));
  s.push_back(UnaryCase("sqrt", Sqrt, true));
  s.push_back(UnaryCase("sigmoid", Sigmoid));
  s.push_back(UnaryCase("tanh", Tanh));
  s.push_back(UnaryCase("relu", Relu, false, true));
  for (auto [name, reduce] : {std::pair<const char *, Unary>{"sum", Sum},
                               std::pair<const char *, Unary>{"mean", Mean}}) {
    s.push_back({name, 1e-4, [reduce](uint64_t seed) {
                   std::mt19937_64 g(seed);
                   Value a = RandomParam(g, {3, 4});
                   Value w = RandomConst(g, {3, 4});
                   return GradCheck([&] { return reduce(Mul(Square(a), w)); }, {a});
                 }});
  }
  s.push_back(UnaryCase("reshape", [](const Value &a) {
    return Reshape(Square(Reshape(a, {4, 3})), {3, 4});
  }));
  s.push_back({"mean_axis", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value a = RandomParam(g, {2, 3, 4});
                 Value w0 = RandomConst(g, {3, 4}), w1 = RandomConst(g, {2, 4});
                 return GradCheck([&] {
                   return Add(Sum(Mul(MeanAxis(a, 0), w0)), Sum(Mul(MeanAxis(a, 1), w1)));
                 }, {a});
               }});
  s.push_back({"matmul", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value a = RandomParam(g, {2, 3, 4}), w = RandomParam(g, {4, 5});
                 Value r = RandomConst(g, {2, 3, 5});
                 return GradCheck([&] { return Sum(Mul(MatMul(a, w), r)); }, {a, w});
               }});
  s.push_back({"swap_last_axes", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value a = RandomParam(g, {2, 3, 4});
                 Value r = RandomConst(g, {2, 4, 3});
                 return GradCheck([&] { return Sum(Mul(SwapLastAxes(a), r)); }, {a});
               }});
  s.push_back({"concat_slice", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value a = RandomParam(g, {3, 4}), b = RandomParam(g, {3, 2});
                 Value r = RandomConst(g, {3, 4});
                 return GradCheck([&] {
                   Value c = Concat({a, Square(b)}, 1);  // [3, 6]
                   return Sum(Mul(Slice(c, 1, 1, 4), r));
                 }, {a, b});
               }});
  s.push_back({"embedding_lookup", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value table = RandomParam(g, {5, 3});
                 std::vector<int> idx = {4, 0, 4, 2, 1, 0};
                 Value r = RandomConst(g, {2, 3, 3});
                 return GradCheck([&] {
                   return Sum(Mul(EmbeddingLookup(table, idx, {2, 3}), r));
                 }, {table});
               }});
  s.push_back({"softmax_cross_entropy", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value logits = RandomParam(g, {3, 4}, 2.0);
                 std::vector<int> cls = {int(g() % 4), int(g() % 4), int(g() % 4)};
                 return GradCheck([&] { return SoftmaxCrossEntropy(logits, cls); }, {logits});
               }});
  for (bool causal : {false, true}) {
    s.push_back({causal ? "conv1d_dilated_causal" : "conv1d_dilated", 1e-4,
                 [causal](uint64_t seed) {
                   std::mt19937_64 g(seed);
                   Value x = RandomParam(g, {8, 3}), k = RandomParam(g, {3, 3, 3});
                   Value r = RandomConst(g, {8, 3});
                   return GradCheck([&] {
                     return Sum(Mul(Conv1dDilated(x, k, 2, causal), r));
                   }, {x, k});
                 }});
  }
  s.push_back({"conv1d_dilated_batched", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value x = RandomParam(g, {2, 7, 2}), k = RandomParam(g, {2, 2, 3});
                 Value r = RandomConst(g, {2, 7, 3});
                 return GradCheck([&] {
                   return Sum(Mul(Conv1dDilated(x, k, 3, false), r));
                 }, {x, k});
               }});
  s.push_back({"glu", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value x = RandomParam(g, {5, 6});
                 Value r = RandomConst(g, {5, 3});
                 return GradCheck([&] { return Sum(Mul(Glu(x), r)); }, {x});
               }});
  s.push_back({"stop_gradient", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value h = RandomParam(g, {3, 4}), e = RandomParam(g, {3, 4});
                 // The codebook-style term: gradient reaches e only.
                 return GradCheck([&] {
                   return Add(Mean(Square(Sub(StopGradient(h), e))),
                              Mean(Mul(h, StopGradient(Tanh(h)))));
                 }, {h, e});
               }});
  s.push_back({"straight_through", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value h = RandomParam(g, {3, 4}), q = RandomParam(g, {3, 4});
                 Value w = RandomConst(g, {3, 4});
                 return GradCheck([&] {
                   return Sum(Mul(Square(StraightThrough(h, Tanh(q))), w));
                 }, {h, q});
               }});
  s.push_back({"gradient_reversal", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value a = RandomParam(g, {3, 4});
                 Value w = RandomConst(g, {3, 4});
                 // GRL has no forward effect, so the check runs against the
                 // manually negated numeric gradient.
                 GradCheckReport rep = GradCheckDetailed([&] {
                   return Sum(Mul(Tanh(GradientReversal(Square(a), 0.7)), w));
                 }, {a});
                 std::vector<double> expect = rep.numeric[0];
                 for (auto &v : expect) v *= -0.7;
                 return RelativeError(rep.analytic[0], expect);
               }});
  s.push_back({"magnitude", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value re = AwayFromZero(g, {3, 4}), im = RandomParam(g, {3, 4});
                 Value w = RandomConst(g, {3, 4});
                 return GradCheck([&] { return Sum(Mul(Magnitude(re, im, 1e-7), w)); },
                                  {re, im});
               }});
  s.push_back({"lsgan", 1e-4, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value r = RandomParam(g, {2, 5, 1}), f = RandomParam(g, {2, 5, 1});
                 return GradCheck([&] {
                   return Add(LsganDiscriminatorLoss(r, f), LsganGeneratorLoss(f));
                 }, {r, f});
               }});
  s.push_back({"vqvae_objective", 1e-4, [](uint64_t seed) {
                 ModelFixture fx(seed);
                 fx.TakeParams("enc/");
                 fx.TakeParams("dec/");
                 fx.TakeParams("codebook/");
                 fx.TakeParams("spk_embed");
                 LossConfig lc;
                 return GradCheck([&] {
                   HierarchicalOutput out = fx.model.Forward(fx.x, fx.aux);
                   return VqvaeObjective(fx.x, out.x_hat, out.enc.vq, lc).total;
                 }, fx.params);
               }});
  s.push_back({"speaker_adversarial", 1e-4, [](uint64_t seed) {
                 ModelFixture fx(seed);
                 fx.TakeParams("enc/");
                 fx.TakeParams("dec/");
                 const size_t n_encoder = fx.params.size();
                 fx.TakeParams("spkclf/");
                 // GRL: the encoder side is compared against -lambda times the
                 // numeric gradient of the same loss.
                 const double lambda = 0.3;
                 GradCheckReport rep = GradCheckDetailed([&] {
                   EncodeOutput enc = fx.model.Encode(fx.x);
                   return SpeakerAdversarialLoss(fx.model, enc, fx.speakers, lambda);
                 }, fx.params);
                 std::vector<double> a, n;
                 for (size_t i = 0; i < fx.params.size(); i++) {
                   bool clf = i >= n_encoder;
                   double f = clf ? 1.0 : -lambda;
                   a.insert(a.end(), rep.analytic[i].begin(), rep.analytic[i].end());
                   for (double v : rep.numeric[i]) n.push_back(f * v);
                 }
                 return RelativeError(a, n);
               }});
  s.push_back({"multires_stft_loss", 1e-3, [](uint64_t seed) {
                 std::mt19937_64 g(seed);
                 Value x = RandomConst(g, {1, 64, 2});
                 Value xh = RandomParam(g, {1, 64, 2});
                 std::vector<StftResolution> res = {{16, 4, 8}, {32, 8, 16}, {64, 16, 32}};
                 return GradCheck([&] { return MultiResStftLoss(x, xh, res); }, {xh});
               }});
  return s;
}

}  // namespace testing
}  // namespace vqvc
