// netblocks/wavenet.h

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

#ifndef VQVC_NETBLOCKS_WAVENET_H_
#define VQVC_NETBLOCKS_WAVENET_H_

#include <random>
#include <string>
#include <vector>

#include "autograd/ops.h"
#include "autograd/parameters.h"

namespace vqvc {

struct WaveNetConfig {
  int layers = 4;
  int channels = 32;
  int kernel_size = 3;
  bool causal = false;
  // Width of the conditioning input injected before every gate; 0 disables
  // the injection weights.
  int aux_dim = 0;
  void Check() const;
  // Frames that can influence one output frame.
  int ReceptiveField() const;
};

struct WaveNetOutput {
  ag::Value output;    // final residual stream [B, T, C]
  ag::Value skip_sum;  // [B, T, C]
};

// Stack of gated dilated convolution layers.  Layer i uses dilation 2^i:
//
//   z = conv(x) + aux_proj(aux)
//   g = z[:, :C] * sigmoid(z[:, C:])
//   x = x + res(g);  skip += skip(g)
//
// Every tensor is laid out [B, T, C]; nothing resamples in time.
class WaveNetStack {
 public:
  WaveNetStack() = default;
  // Registers parameters under `prefix` ("enc/bottom/...").
  WaveNetStack(ag::ParameterStore *params, const std::string &prefix,
               int in_dim, const WaveNetConfig &cfg, std::mt19937_64 *rng);

  // `aux` is [B, T, aux_dim]; pass an undefined Value when aux_dim is 0.
  WaveNetOutput Forward(const ag::Value &input, const ag::Value &aux) const;

  const WaveNetConfig &config() const { return cfg_; }
  int in_dim() const { return in_dim_; }

 private:
  struct Layer {
    ag::Value conv_w, conv_b, aux_w, res_w, res_b, skip_w, skip_b;
    int dilation = 1;
  };
  WaveNetConfig cfg_;
  int in_dim_ = 0;
  ag::Value in_w_, in_b_;
  std::vector<Layer> layers_;
};

// Stack plus a two-layer head on the skip sum: out = W2 relu(W1 relu(skip)).
// Used for all encoders and decoders.
class WaveNet {
 public:
  WaveNet() = default;
  WaveNet(ag::ParameterStore *params, const std::string &prefix, int in_dim,
          int out_dim, const WaveNetConfig &cfg, std::mt19937_64 *rng);

  ag::Value Forward(const ag::Value &input, const ag::Value &aux) const;
  int out_dim() const { return out_dim_; }

 private:
  WaveNetStack stack_;
  int out_dim_ = 0;
  ag::Value head1_w_, head1_b_, head2_w_, head2_b_;
};

// Linear initialization shared by the blocks: U(+-1/sqrt(fan_in)).
ag::Value AddLinearWeight(ag::ParameterStore *params, const std::string &name,
                          const ag::Shape &shape, int fan_in,
                          std::mt19937_64 *rng);

}  // namespace vqvc

#endif  // VQVC_NETBLOCKS_WAVENET_H_
