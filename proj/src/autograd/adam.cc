// autograd/adam.cc

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

#include "autograd/adam.h"

#include <cmath>

namespace vqvc {
namespace ag {

Adam::Adam(const ParameterStore &params, const AdamOptions &opts)
    : params_(params), opts_(opts) {
  if (!(opts.lr > 0.0)) throw Error("adam: learning rate must be positive");
  for (const auto &e : params_.entries()) {
    m_.emplace_back(e.second.numel(), 0.0);
    v_.emplace_back(e.second.numel(), 0.0);
  }
}

void Adam::Step() {
  const auto &entries = params_.entries();
  if (entries.size() != m_.size())
    throw Error("adam: parameter list changed after construction");
  for (const auto &[name, p] : entries)
    for (double g : p.grad())
      if (!std::isfinite(g))
        throw Error("adam: non-finite gradient for parameter " + name);
  step_++;
  const double bc1 = 1.0 - std::pow(opts_.beta1, static_cast<double>(step_));
  const double bc2 = 1.0 - std::pow(opts_.beta2, static_cast<double>(step_));
  for (size_t k = 0; k < entries.size(); k++) {
    Value p = entries[k].second;
    auto &data = p.data();
    const auto &grad = p.grad();
    auto &m = m_[k];
    auto &v = v_[k];
    for (size_t i = 0; i < data.size(); i++) {
      double g = grad[i];
      m[i] = opts_.beta1 * m[i] + (1.0 - opts_.beta1) * g;
      v[i] = opts_.beta2 * v[i] + (1.0 - opts_.beta2) * g * g;
      double m_hat = m[i] / bc1;
      double v_hat = v[i] / bc2;
      data[i] -= opts_.lr * m_hat / (std::sqrt(v_hat) + opts_.eps);
    }
  }
}

std::vector<NamedTensor> Adam::ExportState(const std::string &prefix) const {
  std::vector<NamedTensor> out;
  const auto &entries = params_.entries();
  for (size_t k = 0; k < entries.size(); k++) {
    const Shape &shape = entries[k].second.shape();
    out.push_back({prefix + entries[k].first + "/m", shape,
                   std::vector<float>(m_[k].begin(), m_[k].end())});
    out.push_back({prefix + entries[k].first + "/v", shape,
                   std::vector<float>(v_[k].begin(), v_[k].end())});
  }
  out.push_back({prefix + "step", {1}, {static_cast<float>(step_)}});
  return out;
}

void Adam::ImportState(const std::vector<NamedTensor> &tensors,
                       const std::string &prefix) {
  const auto &entries = params_.entries();
  for (size_t k = 0; k < entries.size(); k++) {
    const NamedTensor *m = FindTensor(tensors, prefix + entries[k].first + "/m");
    const NamedTensor *v = FindTensor(tensors, prefix + entries[k].first + "/v");
    if (!m || !v || m->data.size() != m_[k].size() ||
        v->data.size() != v_[k].size())
      throw Error("optimizer state missing or mismatched for " + entries[k].first);
    m_[k].assign(m->data.begin(), m->data.end());
    v_[k].assign(v->data.begin(), v->data.end());
  }
  const NamedTensor *s = FindTensor(tensors, prefix + "step");
  if (!s || s->data.size() != 1) throw Error("optimizer step counter missing");
  step_ = static_cast<int64_t>(s->data[0]);
}

}  // namespace ag
}  // namespace vqvc
