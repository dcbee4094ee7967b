// tests/test-util.h

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

#ifndef VQVC_TESTS_TEST_UTIL_H_
#define VQVC_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "autograd/ops.h"
#include "signal/signal-types.h"
#include "trainer/batch.h"
#include "vqmodel/hierarchical-vqvae.h"

namespace vqvc {
namespace testing {

inline std::vector<double> RandomVector(std::mt19937_64 &g, int64_t n,
                                        double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  std::vector<double> v(n);
  for (auto &x : v) x = nd(g);
  return v;
}

inline ag::Value RandomParam(std::mt19937_64 &g, const ag::Shape &s,
                             double scale = 1.0) {
  return ag::Value::Parameter(s, RandomVector(g, ag::NumElements(s), scale));
}

inline ag::Value RandomConst(std::mt19937_64 &g, const ag::Shape &s,
                             double scale = 1.0) {
  return ag::Value::FromData(s, RandomVector(g, ag::NumElements(s), scale));
}

// Small enough for finite differences over every weight.
inline ModelConfig TinyModelConfig(uint64_t seed = 1) {
  ModelConfig c;
  c.feat_dim = 5;
  c.n_speakers = 3;
  c.codebook_size = 4;
  c.latent_dim = 3;
  c.spk_embed_dim = 2;
  c.encoder = {2, 3, 3, false, 0};
  c.decoder = c.encoder;
  c.discriminator = c.encoder;
  c.seed = seed;
  return c;
}

// Random utterances: smooth-ish features, alternating voiced stretches.
inline TrainCorpus ToyCorpus(int n_speakers, int utts_per_speaker, int frames,
                             int dim, uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> nd;
  TrainCorpus c;
  c.n_speakers = n_speakers;
  for (int s = 0; s < n_speakers; s++)
    for (int u = 0; u < utts_per_speaker + 1; u++) {
      TrainUtterance tu;
      tu.utt_id = "s" + std::to_string(s) + "_" + std::to_string(u);
      tu.speaker = s;
      int t_len = frames + static_cast<int>(g() % 8);
      tu.feats.resize(t_len, dim);
      for (int d = 0; d < dim; d++) {
        double v = nd(g);
        for (int t = 0; t < t_len; t++) {
          v = 0.8 * v + 0.6 * nd(g);
          tu.feats(t, d) = v + 0.3 * s;
        }
      }
      for (int t = 0; t < t_len; t++) {
        tu.uv.push_back((t / 5) % 2 == 0 ? 1.0 : 0.0);
        tu.lcf0.push_back(0.5 * nd(g));
      }
      (u < utts_per_speaker ? c.train : c.dev).push_back(std::move(tu));
    }
  c.Index();
  return c;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag) {
    std::random_device rd;
    path_ = (std::filesystem::temp_directory_path() /
             ("vqvc-" + tag + "-" + std::to_string(rd())))
                .string();
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

// Records fn() on a fresh tape and backpropagates it.  Gradients of
// `zero_first` are cleared beforehand.
inline ag::Value Backprop(const std::function<ag::Value()> &fn,
                          const std::vector<ag::Value> &zero_first = {}) {
  for (const auto &v : zero_first) v.ZeroGrad();
  ag::Tape tape;
  ag::Value loss;
  {
    ag::TapeScope scope(&tape);
    loss = fn();
  }
  tape.Backward(loss);
  return loss;
}

// Moves a model to a generic, well-conditioned point for finite
// differences.  At the initialization the tiny test models have zero biases,
// which puts ReLU inputs exactly on the kink wherever the layer below is
// inactive, and small activations, which leave whole stacks with gradients
// near 1e-12 where round-off dominates.  Weights are doubled and biases
// drawn from N(0, 0.3^2).
inline void ConditionForGradCheck(const ag::ParameterStore &store, uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> nd(0.0, 0.3);
  for (const auto &[name, v] : store.entries()) {
    bool bias = name.size() >= 2 && name.compare(name.size() - 2, 2, "_b") == 0;
    ag::Value w = v;
    for (double &x : w.data()) x = bias ? nd(g) : 2.0 * x;
  }
}

inline void ConditionForGradCheck(const HierarchicalVqvae &model, uint64_t seed) {
  ConditionForGradCheck(model.generator_params(), seed);
  ConditionForGradCheck(model.discriminator_params(), seed + 1);
}

inline double MaxAbsDiff(const std::vector<double> &a, const std::vector<double> &b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); i++) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline Waveform Sine(double hz, double amp, int n, int sr = 22050) {
  Waveform w;
  w.sample_rate_hz = sr;
  w.samples.resize(n);
  for (int i = 0; i < n; i++)
    w.samples[i] = amp * std::sin(2 * std::numbers::pi * hz * i / sr);
  return w;
}

// Harmonic tone: fundamental plus a few decaying overtones.
inline Waveform Harmonic(double hz, int n, int sr = 22050) {
  Waveform w;
  w.sample_rate_hz = sr;
  w.samples.assign(n, 0.0);
  for (int h = 1; h <= 5; h++)
    for (int i = 0; i < n; i++)
      w.samples[i] += 0.4 / h * std::sin(2 * std::numbers::pi * h * hz * i / sr);
  return w;
}

inline Waveform Noise(double rms, int n, uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> nd(0.0, rms);
  Waveform w;
  w.samples.resize(n);
  for (auto &s : w.samples) s = nd(g);
  return w;
}

inline double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace testing
}  // namespace vqvc

#endif  // VQVC_TESTS_TEST_UTIL_H_
