// netblocks/wavenet.cc

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

#include "netblocks/wavenet.h"

#include <cmath>

namespace vqvc {

using ag::Value;

void WaveNetConfig::Check() const {
  if (layers < 1 || channels < 1 || kernel_size < 1 || aux_dim < 0)
    throw ConfigError(fmt::format(
        "wavenet: invalid config (layers={}, channels={}, kernel_size={}, "
        "aux_dim={})",
        layers, channels, kernel_size, aux_dim));
  if (layers > 16) throw ConfigError("wavenet: more than 16 layers");
}

int WaveNetConfig::ReceptiveField() const {
  int rf = 1;
  for (int i = 0; i < layers; i++) rf += (kernel_size - 1) << i;
  return rf;
}

Value AddLinearWeight(ag::ParameterStore *params, const std::string &name,
                      const ag::Shape &shape, int fan_in,
                      std::mt19937_64 *rng) {
  return params->AddUniform(name, shape, 1.0 / std::sqrt(double(fan_in)), rng);
}

WaveNetStack::WaveNetStack(ag::ParameterStore *params,
                           const std::string &prefix, int in_dim,
                           const WaveNetConfig &cfg, std::mt19937_64 *rng)
    : cfg_(cfg), in_dim_(in_dim) {
  cfg.Check();
  const int c = cfg.channels;
  in_w_ = AddLinearWeight(params, prefix + "/in_w", {in_dim, c}, in_dim, rng);
  in_b_ = params->AddZeros(prefix + "/in_b", {c});
  for (int i = 0; i < cfg.layers; i++) {
    std::string p = fmt::format("{}/layer{}/", prefix, i);
    Layer l;
    l.dilation = 1 << i;
    l.conv_w = AddLinearWeight(params, p + "conv_w", {cfg.kernel_size, c, 2 * c},
                               cfg.kernel_size * c, rng);
    l.conv_b = params->AddZeros(p + "conv_b", {2 * c});
    if (cfg.aux_dim > 0)
      l.aux_w = AddLinearWeight(params, p + "aux_w", {cfg.aux_dim, 2 * c},
                                cfg.aux_dim, rng);
    l.res_w = AddLinearWeight(params, p + "res_w", {c, c}, c, rng);
    l.res_b = params->AddZeros(p + "res_b", {c});
    l.skip_w = AddLinearWeight(params, p + "skip_w", {c, c}, c, rng);
    l.skip_b = params->AddZeros(p + "skip_b", {c});
    layers_.push_back(l);
  }
}

WaveNetOutput WaveNetStack::Forward(const Value &input, const Value &aux) const {
  if (input.last_dim() != in_dim_)
    throw Error(fmt::format("wavenet: input has {} channels, expected {}",
                            input.last_dim(), in_dim_));
  if (cfg_.aux_dim > 0) {
    if (!aux.defined()) throw Error("wavenet: aux input required");
    ag::Shape want = input.shape();
    want.back() = cfg_.aux_dim;
    if (aux.shape() != want)
      throw Error(fmt::format("wavenet: aux shape {} does not match input {}",
                              ag::ShapeString(aux.shape()),
                              ag::ShapeString(input.shape())));
  }
  Value x = ag::Add(ag::MatMul(input, in_w_), in_b_);
  Value skip;
  for (const Layer &l : layers_) {
    Value z = ag::Add(ag::Conv1dDilated(x, l.conv_w, l.dilation, cfg_.causal),
                      l.conv_b);
    if (cfg_.aux_dim > 0) z = ag::Add(z, ag::MatMul(aux, l.aux_w));
    Value g = ag::Glu(z);
    x = ag::Add(x, ag::Add(ag::MatMul(g, l.res_w), l.res_b));
    Value s = ag::Add(ag::MatMul(g, l.skip_w), l.skip_b);
    skip = skip.defined() ? ag::Add(skip, s) : s;
  }
  return {x, skip};
}

WaveNet::WaveNet(ag::ParameterStore *params, const std::string &prefix,
                 int in_dim, int out_dim, const WaveNetConfig &cfg,
                 std::mt19937_64 *rng)
    : stack_(params, prefix, in_dim, cfg, rng), out_dim_(out_dim) {
  const int c = cfg.channels;
  head1_w_ = AddLinearWeight(params, prefix + "/head1_w", {c, c}, c, rng);
  head1_b_ = params->AddZeros(prefix + "/head1_b", {c});
  head2_w_ = AddLinearWeight(params, prefix + "/head2_w", {c, out_dim}, c, rng);
  head2_b_ = params->AddZeros(prefix + "/head2_b", {out_dim});
}

Value WaveNet::Forward(const Value &input, const Value &aux) const {
  WaveNetOutput o = stack_.Forward(input, aux);
  Value h = ag::Relu(ag::Add(ag::MatMul(ag::Relu(o.skip_sum), head1_w_),
                             head1_b_));
  return ag::Add(ag::MatMul(h, head2_w_), head2_b_);
}

}  // namespace vqvc
